"""
Shared store of enumerated W(m,n) lattices.
Building the order matrix is the expensive step, so every consumer (analysis,
oracle suite, CLI) goes through one cache per process.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from lattice import FinitePoset, LatticeError
from words import MNWord, count_words, iter_words

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIGURATION
# ============================================================================

# Word-only enumeration (statistics, triangles) never builds an order matrix.
ENUMERATION_LIMIT = 10**5
# Dense posets hold several N x N tables.
LATTICE_LIMIT = 5000


def word_poset(m: int, n: int) -> FinitePoset:
    """
    W(m,n) as a FinitePoset labelled by MNWord, in lexicographic order.

    Raises:
        LatticeError: if |W(m,n)| exceeds LATTICE_LIMIT
    """
    size = count_words(m, n)
    if size > LATTICE_LIMIT:
        raise LatticeError(f"W({m},{n}) has {size} words, above the lattice size limit {LATTICE_LIMIT}")
    words = list(iter_words(m, n))
    letters = np.array([w.letters for w in words], dtype=np.int64).reshape(len(words), n)
    rel = np.empty((len(words), len(words)), dtype=bool)
    for i in range(len(words)):
        rel[i] = (letters[i] <= letters).all(axis=1)
    return FinitePoset(words, rel)


class LatticeCache:
    """
    Keeps one FinitePoset per (m, n).
    """

    def __init__(self):
        self.posets: Dict[Tuple[int, int], FinitePoset] = {}

    def get_lattice(self, m: int, n: int) -> FinitePoset:
        """
        Get the cached W(m,n), building it on first use.

        Args:
            m: Alphabet parameter
            n: Word length

        Returns:
            FinitePoset of W(m,n)
        """
        key = (m, n)
        if key not in self.posets:
            logger.info("building W(%d,%d)", m, n)
            self.posets[key] = word_poset(m, n)
        return self.posets[key]

    def words(self, m: int, n: int) -> List[MNWord]:
        return list(self.get_lattice(m, n).elements)


# Singleton instance
_lattice_cache_instance = None

def get_lattice_cache() -> LatticeCache:
    """Returns the singleton LatticeCache instance."""
    global _lattice_cache_instance
    if _lattice_cache_instance is None:
        _lattice_cache_instance = LatticeCache()
    return _lattice_cache_instance
