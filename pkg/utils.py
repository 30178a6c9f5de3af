from math import comb
from typing import Dict, Tuple


def binomial(n: int, k: int) -> int:
    """C(n, k) with the combinatorial convention: 0 whenever k < 0, n < 0 or k > n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def render_bivariate(coefficients: Dict[Tuple[int, int], int], x: str = "x", y: str = "y") -> str:
    """Render {(a, b): c} as "c*x^a*y^b + ..." ordered by a, then b; zero terms are dropped."""
    terms = []
    for (a, b), c in sorted(coefficients.items()):
        if c == 0:
            continue
        factors = []
        for var, power in ((x, a), (y, b)):
            if power == 1:
                factors.append(var)
            elif power > 1:
                factors.append(f"{var}^{power}")
        if not factors:
            terms.append(str(c))
        elif c == 1:
            terms.append("*".join(factors))
        else:
            terms.append("*".join([str(c)] + factors))
    return " + ".join(terms) if terms else "0"
