"""Global numeric tolerances."""

#: Relative tolerance for geometric predicates (feasibility, redundancy, dedup).
EPS_P = 1e-9

#: Tolerance for reporting agreement with exact rational results in n = 2.
EPS_R = 1e-12

#: Default cap on the number of n-subsets tried by vertex enumeration.
ENUMERATION_BUDGET = 1_000_000


def close(x, y, eps=EPS_P):
    """Scale-aware comparison: |x - y| <= eps * (1 + max(|x|, |y|))."""
    return abs(x - y) <= eps * (1.0 + max(abs(x), abs(y)))
