"""Hypothesis-test procedures over similarity-score samples.

One-way ANOVA with an F-distribution p-value, Tukey HSD pairwise
comparisons adjusted through the studentized range distribution
(Tukey-Kramer standard errors for unequal group sizes), the Mann-Whitney
rank-sum test, and the Wilcoxon signed-rank test for paired samples. The
rank tests use midranks, tie-corrected variances, a 0.5 continuity
correction, and the normal approximation throughout (the score samples
here run to tens of thousands of values, so exact enumeration is out of
scope).
"""

import math
from dataclasses import dataclass

import numpy as np

from versesim.special import f_cdf, normal_cdf, studentized_range_cdf


@dataclass(frozen=True)
class GroupSample:
    """A labeled sample of real-valued scores."""

    label: str
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.values.ndim != 1 or len(self.values) == 0:
            raise ValueError("group %r must be a non-empty 1-D sample" % self.label)
        if not np.all(np.isfinite(self.values)):
            raise ValueError("group %r contains non-finite values" % self.label)

    @property
    def n(self):
        return len(self.values)

    @property
    def mean(self):
        return float(np.mean(self.values))


@dataclass(frozen=True)
class TestResult:
    method: str  # anova | mann_whitney | wilcoxon
    statistic: float
    p_value: float
    n: tuple
    df: tuple = None
    z: float = None
    groups: tuple = ()  # (label, n, mean) summaries

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError("p-value %r outside [0, 1]" % self.p_value)
        if not math.isfinite(self.statistic):
            raise ValueError("non-finite test statistic")

    def to_json_dict(self):
        return {
            "method": self.method,
            "statistic": self.statistic,
            "df": list(self.df) if self.df is not None else None,
            "z": self.z,
            "p_value": self.p_value,
            "groups": [{"label": g[0], "n": g[1], "mean": g[2]} for g in self.groups],
        }


@dataclass(frozen=True)
class TukeyPair:
    label_a: str
    label_b: str
    mean_diff: float
    q: float
    p_adj: float
    significant_at_alpha: bool


@dataclass(frozen=True)
class TukeyResult:
    pairs: tuple
    alpha: float
    df_within: float
    ms_within: float

    def to_json_dict(self):
        return {
            "method": "tukey_hsd",
            "alpha": self.alpha,
            "df_within": self.df_within,
            "ms_within": self.ms_within,
            "pairs": [
                {
                    "label_a": p.label_a,
                    "label_b": p.label_b,
                    "mean_diff": p.mean_diff,
                    "q": p.q,
                    "p_adj": p.p_adj,
                    "significant_at_alpha": p.significant_at_alpha,
                }
                for p in self.pairs
            ],
        }


def _anova_decomposition(groups):
    if len(groups) < 2:
        raise ValueError("need at least 2 groups, got %d" % len(groups))
    for g in groups:
        if g.n < 2:
            raise ValueError("group %r needs at least 2 values" % g.label)
    total_n = sum(g.n for g in groups)
    grand = sum(float(np.sum(g.values)) for g in groups) / total_n
    ss_between = sum(g.n * (g.mean - grand) ** 2 for g in groups)
    ss_within = sum(float(np.sum((g.values - g.mean) ** 2)) for g in groups)
    if ss_within == 0.0:
        raise ValueError("zero within-group variance everywhere; ANOVA is undefined")
    k = len(groups)
    df_between = k - 1
    df_within = total_n - k
    return ss_between / df_between, ss_within / df_within, df_between, df_within


def one_way_anova(groups):
    """One-way ANOVA: F = MSB/MSW with df (k-1, N-k)."""
    msb, msw, df_b, df_w = _anova_decomposition(groups)
    f_stat = msb / msw
    p = min(1.0, max(0.0, 1.0 - f_cdf(df_b, df_w, f_stat)))
    return TestResult(
        method="anova",
        statistic=f_stat,
        p_value=p,
        n=tuple(g.n for g in groups),
        df=(float(df_b), float(df_w)),
        groups=tuple((g.label, g.n, g.mean) for g in groups),
    )


def tukey_hsd(groups, alpha=0.05):
    """All pairwise comparisons with studentized-range adjusted p-values."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1), got %r" % alpha)
    _, msw, _, df_w = _anova_decomposition(groups)
    k = len(groups)
    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = groups[i], groups[j]
            diff = a.mean - b.mean
            se = math.sqrt((msw / 2.0) * (1.0 / a.n + 1.0 / b.n))
            q = abs(diff) / se
            p_adj = min(1.0, max(0.0, 1.0 - studentized_range_cdf(q, k, df_w)))
            pairs.append(TukeyPair(a.label, b.label, diff, q, p_adj, p_adj < alpha))
    return TukeyResult(tuple(pairs), alpha, float(df_w), msw)


def _midranks(values):
    """Average ranks (1-based) with ties sharing their midrank."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    n = len(values)
    while i < n:
        j = i
        while j + 1 < n and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _tie_term(values):
    """Sum of t^3 - t over tie groups."""
    _, counts = np.unique(values, return_counts=True)
    return float(np.sum(counts.astype(np.float64) ** 3 - counts))


def mann_whitney_u(x, y, alternative="two-sided"):
    """Mann-Whitney rank-sum test with tie-corrected normal approximation.

    ``alternative`` is 'two-sided' (default), 'less' (x stochastically
    smaller), or 'greater'. The reported statistic is min(U_x, U_y).
    """
    if alternative not in ("two-sided", "less", "greater"):
        raise ValueError("unknown alternative %r" % alternative)
    nx, ny = x.n, y.n
    pooled = np.concatenate([x.values, y.values])
    ranks = _midranks(pooled)
    r_x = float(np.sum(ranks[:nx]))
    u_x = r_x - nx * (nx + 1) / 2.0
    u_y = nx * ny - u_x
    n = nx + ny
    mu = nx * ny / 2.0
    sigma_sq = (nx * ny / 12.0) * ((n + 1) - _tie_term(pooled) / (n * (n - 1)))
    if sigma_sq <= 0.0:
        raise ValueError("all pooled values are identical; test is undefined")
    sigma = math.sqrt(sigma_sq)

    if alternative == "two-sided":
        u_min = min(u_x, u_y)
        z = min(0.0, u_min + 0.5 - mu) / sigma
        p = min(1.0, 2.0 * (1.0 - normal_cdf(abs(z))))
    elif alternative == "less":
        z = (u_x + 0.5 - mu) / sigma
        p = min(1.0, max(0.0, normal_cdf(z)))
    else:
        z = (u_x - 0.5 - mu) / sigma
        p = min(1.0, max(0.0, 1.0 - normal_cdf(z)))

    return TestResult(
        method="mann_whitney",
        statistic=min(u_x, u_y),
        p_value=p,
        n=(nx, ny),
        z=z,
        groups=((x.label, nx, x.mean), (y.label, ny, y.mean)),
    )


def wilcoxon_signed_rank(x, y, labels=("x", "y")):
    """Wilcoxon signed-rank test on paired samples, zeros dropped.

    Two-sided p via the tie-corrected normal approximation with 0.5
    continuity correction; the statistic is min(W+, W-).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("paired samples must be 1-D with equal length")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("paired samples contain non-finite values")
    d = x - y
    d = d[d != 0.0]
    m = len(d)
    if m == 0:
        raise ValueError("all paired differences are zero; test is undefined")
    abs_d = np.abs(d)
    ranks = _midranks(abs_d)
    w_plus = float(np.sum(ranks[d > 0]))
    w_minus = m * (m + 1) / 2.0 - w_plus
    mu = m * (m + 1) / 4.0
    sigma_sq = m * (m + 1) * (2 * m + 1) / 24.0 - _tie_term(abs_d) / 48.0
    sigma = math.sqrt(sigma_sq)
    w_min = min(w_plus, w_minus)
    z = min(0.0, w_min + 0.5 - mu) / sigma
    p = min(1.0, 2.0 * (1.0 - normal_cdf(abs(z))))
    return TestResult(
        method="wilcoxon",
        statistic=w_min,
        p_value=p,
        n=(m,),
        z=z,
        groups=(
            (labels[0], len(x), float(np.mean(x))),
            (labels[1], len(y), float(np.mean(y))),
        ),
    )
