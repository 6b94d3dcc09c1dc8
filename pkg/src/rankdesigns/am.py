"""Assmus-Mattson pipeline for rank-metric codes.

Given an F_q-[n x m, k, d] code C and a strength 1 <= t < d, the hypothesis
is that C* has at most d - t nonzero weights in [1, n - t].  When it holds
and the relevant ranks are invariant, the u-supports of C (d <= u <= w) and
of C* (d* <= u <= min(w*, n - t)) are t-designs over F_q.

Nothing is taken on trust: every extracted support family is re-verified by
brute force, and a family that fails verification raises
:class:`~rankdesigns.codes.InconsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .codes import (
    DEFAULT_BUDGET,
    Budget,
    HypothesisError,
    InconsistencyError,
    MatrixCode,
    VectorCode,
    WeightDistribution,
    dual,
    dual_weight_distribution,
    expand,
    is_mrd,
    weight_distribution,
)
from .designs import (
    DesignCheck,
    DesignInstance,
    Invariance,
    enumerate_subspaces,
    invariance_of,
    supports_by_rank,
    verify_design,
)

__all__ = [
    "InvarianceError",
    "AMReport",
    "am_hypothesis",
    "am_run",
    "support_design",
    "mrd_trivial_design_equivalence",
]


class InvarianceError(HypothesisError):
    """Neither the code nor its dual is invariant at its minimum rank."""

    def __init__(self, message: str, witnesses: dict[str, Invariance]) -> None:
        super().__init__(message)
        self.witnesses = witnesses


def _min_rank(wd: WeightDistribution, n: int, m: int) -> int:
    d = wd.min_distance
    return min(n, m) + 1 if d is None else d


def am_hypothesis(code: MatrixCode, t: int, budget: Budget = DEFAULT_BUDGET) -> tuple[bool, dict[str, Any]]:
    """Check |{1 <= i <= n-t : W_i(C*) != 0}| <= d - t.

    The dual distribution is taken from both the MacWilliams transform and
    direct enumeration when budgets allow; they must agree.
    """
    wd = weight_distribution(code, budget)
    d = _min_rank(wd, code.n, code.m)
    if not 1 <= t < d:
        raise HypothesisError(f"strength must satisfy t < d (1 <= t < {d}), got t={t}")
    dual_wd = dual_weight_distribution(code, budget, cross_check=True)
    window = [i for i in range(1, code.n - t + 1) if dual_wd[i]]
    holds = len(window) <= d - t
    diagnostics = {
        "d": d,
        "t": t,
        "bound": d - t,
        "distribution": wd,
        "dual_distribution": dual_wd,
        "dual_weights_in_window": window,
    }
    return holds, diagnostics


@dataclass
class AMReport:
    n: int
    m: int
    k: int
    q: int
    t: int
    d: int
    d_star: int
    distribution: WeightDistribution
    dual_distribution: WeightDistribution
    dual_weights_in_window: tuple[int, ...]
    hypothesis_holds: bool
    invariance: dict[str, dict[int, Invariance]] = dc_field(default_factory=dict)
    primal_designs: dict[int, DesignInstance] = dc_field(default_factory=dict)
    dual_designs: dict[int, DesignInstance] = dc_field(default_factory=dict)

    @property
    def verification(self) -> dict[tuple[str, int], int]:
        out = {("primal", u): d.lam for u, d in self.primal_designs.items()}
        out.update({("dual", u): d.lam for u, d in self.dual_designs.items()})
        return out

    def to_json(self) -> dict:
        def inv(side: str) -> dict:
            return {
                str(u): (None if not v.invariant else (None if v.mu is None else str(v.mu)))
                for u, v in sorted(self.invariance.get(side, {}).items())
            }

        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "q": self.q,
            "t": self.t,
            "d": self.d,
            "d_star": self.d_star,
            "distribution": self.distribution.to_json(),
            "dual_distribution": self.dual_distribution.to_json(),
            "dual_weights_in_window": list(self.dual_weights_in_window),
            "hypothesis_holds": self.hypothesis_holds,
            "invariance": {"primal": inv("primal"), "dual": inv("dual")},
            "primal_designs": {str(u): d.to_json() for u, d in sorted(self.primal_designs.items())},
            "dual_designs": {str(u): d.to_json() for u, d in sorted(self.dual_designs.items())},
        }


def _collect(code: MatrixCode, levels: list[int], t: int, side: str, budget: Budget) -> tuple[dict[int, Invariance], dict[int, DesignInstance]]:
    """Invariance per level and verified designs for the invariant prefix."""
    invariance: dict[int, Invariance] = {}
    designs: dict[int, DesignInstance] = {}
    if not levels:
        return invariance, designs
    supports = supports_by_rank(code, levels, budget)
    qualifying = True
    for u in levels:
        inv = invariance_of(supports[u])
        invariance[u] = inv
        qualifying = qualifying and inv.invariant
        if not qualifying or not supports[u]:
            continue
        blocks = DesignInstance.from_blocks(supports[u], code.field, code.n, u)
        check = verify_design(blocks.blocks, t, field=code.field, n=code.n, budget=budget)
        if not check:
            a, ca, b, cb = check.witness
            raise InconsistencyError(
                f"{side} {u}-supports fail to form a {t}-design: {a} lies in {ca} blocks, {b} in {cb}"
            )
        designs[u] = blocks.with_strength(t, check.lam)
    return invariance, designs


def am_run(
    code: MatrixCode,
    t: int,
    w: int | None = None,
    w_star: int | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> AMReport:
    """Extract and verify the designs held by C and C*.

    ``w`` and ``w_star`` default to d and d* (minimum-rank designs only).
    Dual levels start at max(d*, t): supports of smaller rank are only
    vacuously t-designs.
    A rank level contributes a design only when it and every lower level on
    the same side are invariant; the report records invariance per level.
    """
    holds, diag = am_hypothesis(code, t, budget)
    if not holds:
        raise HypothesisError(
            f"hypothesis fails for t={t}: dual weights {diag['dual_weights_in_window']} in [1, {code.n - t}] "
            f"exceed d - t = {diag['bound']}"
        )
    n = code.n
    d = diag["d"]
    dual_wd = diag["dual_distribution"]
    d_star = _min_rank(dual_wd, n, code.m)
    w = d if w is None else w
    w_star = d_star if w_star is None else w_star
    if w < d or w_star < d_star:
        raise ValueError(f"need w >= d={d} and w* >= d*={d_star}")
    primal_levels = list(range(d, min(w, n) + 1))
    # dual supports of rank below t contain no t-subspace, so those levels carry no information
    dual_levels = list(range(max(d_star, t), min(w_star, n - t) + 1))

    inv_p, des_p = _collect(code, primal_levels, t, "primal", budget)
    inv_d, des_d = _collect(dual(code), dual_levels, t, "dual", budget)
    failures = {side: inv for side, levels in (("primal", inv_p), ("dual", inv_d)) for inv in levels.values() if not inv}
    if failures and not des_p and not des_d:
        raise InvarianceError("no rank level of the code or its dual is invariant", failures)
    return AMReport(
        n=n,
        m=code.m,
        k=code.k,
        q=code.q,
        t=t,
        d=d,
        d_star=d_star,
        distribution=diag["distribution"],
        dual_distribution=dual_wd,
        dual_weights_in_window=tuple(diag["dual_weights_in_window"]),
        hypothesis_holds=True,
        invariance={"primal": inv_p, "dual": inv_d},
        primal_designs=des_p,
        dual_designs=des_d,
    )


def support_design(code: MatrixCode, u: int, t: int, budget: Budget = DEFAULT_BUDGET) -> tuple[DesignInstance, DesignCheck]:
    """The u-supports of C as a block set, with its brute-force strength-t check.

    No hypothesis is required; this is the direct route used when the
    theorem does not apply.
    """
    sup = supports_by_rank(code, [u], budget)[u]
    design = DesignInstance.from_blocks(sup, code.field, code.n, u)
    check = verify_design(design.blocks, t, field=code.field, n=code.n, budget=budget)
    if check:
        design = design.with_strength(t, check.lam)
    return design, check


def mrd_trivial_design_equivalence(
    code: VectorCode, gamma: list[int] | None = None, budget: Budget = DEFAULT_BUDGET
) -> tuple[bool, bool]:
    """(is MRD, rank-d words of Gamma(C) hold the trivial design), computed independently.

    The two answers must agree when m >= n; a disagreement raises
    :class:`InconsistencyError`.
    """
    if code.m < code.n:
        raise ValueError(f"the equivalence needs m >= n, got m={code.m}, n={code.n}")
    mat = expand(code, gamma)
    mrd = is_mrd(mat, budget)
    d = _min_rank(weight_distribution(mat, budget), mat.n, mat.m)
    found = set(supports_by_rank(mat, [d], budget)[d])
    everything = set(enumerate_subspaces(mat.n, d, mat.field, budget))
    trivial = found == everything
    if mrd != trivial:
        raise InconsistencyError(f"MRD={mrd} but trivial design={trivial} for {code}")
    return mrd, trivial
