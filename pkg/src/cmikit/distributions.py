"""Exact finite joint distributions and the semantic side of CMI statements.

Probabilities are ``fractions.Fraction`` throughout, so validity of a
statement on a distribution is decided exactly (no thresholds).  Entropies are
reported as floats in bits; they are only used for diagnostics and
cross-checks, never inside the validity decision.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .statements import Cmi, IndexSet, canonicalize

Rational = Fraction
Assignment = tuple[int, ...]

#: Slack used when comparing float entropy expressions against exact verdicts.
TOLERANCE = 1e-9


class JointDistribution:
    """Sparse exact pmf over ``n`` finite variables with given alphabet sizes.

    Outcomes are tuples ``(s_1, ..., s_n)`` with ``0 <= s_i < alphabet_sizes[i]``.
    Zero-probability outcomes are dropped; total mass must be exactly 1.
    """

    __slots__ = ("n", "alphabet_sizes", "pmf", "_marginals")

    def __init__(
        self,
        alphabet_sizes: Sequence[int],
        pmf: Mapping[Assignment, Rational],
    ) -> None:
        sizes = tuple(int(s) for s in alphabet_sizes)
        for s in sizes:
            if s < 1:
                raise ValueError(f"alphabet sizes must be >= 1, got {s}")
        n = len(sizes)
        clean: dict[Assignment, Rational] = {}
        for outcome, prob in pmf.items():
            outcome = tuple(int(s) for s in outcome)
            if len(outcome) != n:
                raise ValueError(f"outcome {outcome} has arity {len(outcome)}, expected {n}")
            for i, s in enumerate(outcome):
                if not 0 <= s < sizes[i]:
                    raise ValueError(
                        f"symbol {s} of variable {i + 1} outside its alphabet 0..{sizes[i] - 1}"
                    )
            q = Fraction(prob)
            if q < 0:
                raise ValueError(f"negative probability {q} for outcome {outcome}")
            if q:
                clean[outcome] = clean.get(outcome, Fraction(0)) + q
        if sum(clean.values(), Fraction(0)) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        self.n = n
        self.alphabet_sizes = sizes
        self.pmf = clean
        self._marginals: dict[tuple[int, ...], dict[Assignment, Rational]] = {}

    def marginal(self, indices: Iterable[int]) -> dict[Assignment, Rational]:
        """Marginal pmf of the 1-based variables ``indices``, keyed by sorted order."""
        key = tuple(sorted(set(int(i) for i in indices)))
        for i in key:
            if not 1 <= i <= self.n:
                raise ValueError(f"variable index {i} outside the ground set 1..{self.n}")
        cached = self._marginals.get(key)
        if cached is not None:
            return cached
        out: dict[Assignment, Rational] = {}
        for outcome, prob in self.pmf.items():
            sub = tuple(outcome[i - 1] for i in key)
            out[sub] = out.get(sub, Fraction(0)) + prob
        self._marginals[key] = out
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return (
            self.n == other.n
            and self.alphabet_sizes == other.alphabet_sizes
            and self.pmf == other.pmf
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"JointDistribution(sizes={self.alphabet_sizes}, support={len(self.pmf)})"


def entropy(p: JointDistribution, indices: Iterable[int]) -> float:
    """Shannon entropy in bits of the marginal on ``indices``."""
    total = 0.0
    for prob in p.marginal(indices).values():
        q = float(prob)
        total -= q * math.log2(q)
    return total + 0.0  # normalize -0.0 away


def cond_entropy(p: JointDistribution, a: Iterable[int], c: Iterable[int]) -> float:
    """Conditional entropy H(X_a | X_c) in bits."""
    a = frozenset(a)
    c = frozenset(c)
    return entropy(p, a | c) - entropy(p, c)


def cond_mutual_info(
    p: JointDistribution,
    a: Iterable[int],
    b: Iterable[int],
    c: Iterable[int] = frozenset(),
) -> float:
    """Conditional mutual information I(X_a ; X_b | X_c) in bits."""
    a = frozenset(a)
    b = frozenset(b)
    c = frozenset(c)
    return entropy(p, a | c) + entropy(p, b | c) - entropy(p, a | b | c) - entropy(p, c)


def j_value(p: JointDistribution, k: Cmi) -> float:
    """Defect functional: sum of per-block conditional entropies minus the joint one.

    Zero exactly when ``k`` is valid on ``p`` (for two or more blocks it is
    non-negative); statements with at most one block give literally ``0.0``.
    """
    if k.n != p.n:
        raise ValueError(f"statement ground set {k.n} does not match distribution arity {p.n}")
    if len(k.blocks) <= 1:
        return 0.0
    union = frozenset().union(*k.blocks)
    total = -cond_entropy(p, union, k.cond)
    for b in k.blocks:
        total += cond_entropy(p, b, k.cond)
    return total + 0.0


def _grouped_conditionals(
    p: JointDistribution, cond: IndexSet, other: IndexSet
) -> dict[Assignment, dict[Assignment, Rational]]:
    """Split the marginal on ``cond | other`` by the assignment to ``cond``."""
    cond_key = tuple(sorted(cond))
    both_key = tuple(sorted(cond | other))
    pick_cond = tuple(both_key.index(i) for i in cond_key)
    pick_other = tuple(j for j, i in enumerate(both_key) if i not in cond)
    out: dict[Assignment, dict[Assignment, Rational]] = {}
    for outcome, prob in p.marginal(both_key).items():
        y = tuple(outcome[j] for j in pick_cond)
        z = tuple(outcome[j] for j in pick_other)
        out.setdefault(y, {})[z] = prob
    return out


def is_valid(p: JointDistribution, k: Cmi) -> bool:
    """Exact decision: does ``p`` satisfy the statement ``k``?

    Works on the canonical form.  The repeated indices must be a function of
    the conditioning variables (constant within every conditioning class of
    the support), and the parts must factorize exactly: for every conditioning
    assignment ``y`` and every combination of part assignments drawn from the
    per-part conditional supports,

        p(parts, y) * p(y)^(t-1) == prod_j p(part_j, y).

    Combinations outside that product are automatically consistent (both
    sides are zero), so restricting to it loses nothing.
    """
    if k.n != p.n:
        raise ValueError(f"statement ground set {k.n} does not match distribution arity {p.n}")
    c = canonicalize(k)
    if c.degenerate:
        return True
    cond_key = tuple(sorted(c.cond))
    if c.repeated:
        rep_key = tuple(sorted(c.repeated))
        pos = {i: j for j, i in enumerate(sorted(c.cond | c.repeated))}
        seen: dict[Assignment, Assignment] = {}
        for outcome in p.marginal(cond_key + rep_key):
            y = tuple(outcome[pos[i]] for i in cond_key)
            r = tuple(outcome[pos[i]] for i in rep_key)
            if seen.setdefault(y, r) != r:
                return False
    if not c.parts:
        return True
    t = len(c.parts)
    cond_marg = p.marginal(cond_key)
    per_part = [_grouped_conditionals(p, c.cond, part) for part in c.parts]
    all_parts = frozenset().union(*c.parts)
    joint = _grouped_conditionals(p, c.cond, all_parts)
    parts_key = tuple(sorted(all_parts))
    slots = [tuple(parts_key.index(i) for i in sorted(part)) for part in c.parts]
    for y, py in cond_marg.items():
        tables = [g.get(y, {}) for g in per_part]
        joint_y = joint.get(y, {})
        for combo in itertools.product(*(table.items() for table in tables)):
            z: list[int] = [0] * len(parts_key)
            rhs = Fraction(1)
            for (assign, prob), slot in zip(combo, slots):
                rhs *= prob
                for j, s in zip(slot, assign):
                    z[j] = s
            lhs = joint_y.get(tuple(z), Fraction(0)) * py ** (t - 1)
            if lhs != rhs:
                return False
    return True


def random_distribution(
    n: int,
    alphabet_sizes: Sequence[int],
    seed: int,
    mass_grain: int = 16,
) -> JointDistribution:
    """Deterministic random pmf: throw ``mass_grain`` unit masses into outcome bins.

    Every probability is a multiple of ``1/mass_grain``, so downstream
    arithmetic stays exact and the family of reachable distributions is
    finite.  ``mass_grain=1`` gives a random point mass.
    """
    if not 0 <= n <= 8:
        raise ValueError(f"random_distribution supports n in 0..8, got {n}")
    sizes = tuple(int(s) for s in alphabet_sizes)
    if len(sizes) != n:
        raise ValueError(f"expected {n} alphabet sizes, got {len(sizes)}")
    for s in sizes:
        if not 1 <= s <= 4:
            raise ValueError(f"alphabet sizes must be in 1..4, got {s}")
    if mass_grain < 1:
        raise ValueError(f"mass_grain must be >= 1, got {mass_grain}")
    rng = random.Random(seed)
    outcomes = list(itertools.product(*(range(s) for s in sizes)))
    counts: dict[Assignment, int] = {}
    for _ in range(mass_grain):
        o = rng.choice(outcomes)
        counts[o] = counts.get(o, 0) + 1
    pmf = {o: Fraction(c, mass_grain) for o, c in counts.items()}
    return JointDistribution(sizes, pmf)
