"""Adaptive feedback-bit partitioning.

Splits a per-user feedback budget between the desired channel and the
interfering channels: closed-form interferer split with effective-set
pruning, closed-form desired-channel bits for the low- and high-SNR
regimes, and convexity-based integer rounding. An equal-bit baseline and a
brute-force oracle round out the module.
"""

import itertools
import math
from dataclasses import dataclass

from .bounds import LinkParams, approx_loss_user
from .errors import CapacityError
from .numerics import ln_gamma

__all__ = [
    "InterfererWeight",
    "BitAllocation",
    "effective_interferer_set",
    "partition_interferer_bits",
    "desired_bits_low_snr",
    "desired_bits_high_snr",
    "round_allocation",
    "allocate",
    "equal_bit_allocation",
    "exhaustive_allocation",
]

_SHARE_TOL = 1e-9


@dataclass(frozen=True)
class InterfererWeight:
    """One interferer's pruning weight alpha * eta^2."""

    index: int
    weight: float

    def __post_init__(self):
        if not (0.0 < self.weight <= 1.0 + 1e-12):
            raise ValueError(
                f"weight must lie in (0, 1], got {self.weight!r} for index {self.index}"
            )


@dataclass(frozen=True)
class BitAllocation:
    """Integer feedback-bit split: desired-channel bits plus a per-interferer map."""

    desired_bits: int
    interferer_bits: dict

    def __post_init__(self):
        if not isinstance(self.desired_bits, int) or isinstance(self.desired_bits, bool):
            raise ValueError(f"desired_bits must be an int, got {self.desired_bits!r}")
        if self.desired_bits < 0:
            raise ValueError(f"desired_bits must be >= 0, got {self.desired_bits}")
        clean = {}
        for idx, b in self.interferer_bits.items():
            if not isinstance(b, int) or isinstance(b, bool) or b < 0:
                raise ValueError(f"interferer bits must be ints >= 0, got {b!r}")
            clean[int(idx)] = b
        object.__setattr__(self, "interferer_bits", clean)

    @property
    def total_bits(self) -> int:
        return self.desired_bits + sum(self.interferer_bits.values())

    def as_tuple(self):
        """(desired, then interferer bits in index order)."""
        return (self.desired_bits,
                *(self.interferer_bits[i] for i in sorted(self.interferer_bits)))


def _geometric_mean(weights) -> float:
    return math.exp(sum(math.log(w.weight) for w in weights) / len(weights))


def effective_interferer_set(weights, budget_bi, nt: int) -> set:
    """Largest interferer subset whose closed-form shares are all nonnegative.

    Iterative pruning: start from all positive-weight interferers, drop the
    weakest member whose share would be negative, recompute, repeat to a
    fixpoint. With a zero budget this degenerates to the maximal-weight
    members (everything else would get a negative share).
    """
    budget_bi = float(budget_bi)
    if budget_bi < 0:
        raise ValueError(f"budget_bi must be >= 0, got {budget_bi}")
    nt = int(nt)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    current = list(weights)
    while current:
        m = len(current)
        gm = _geometric_mean(current)
        shares = {
            w.index: budget_bi / m + (nt - 1) * math.log2(w.weight / gm)
            for w in current
        }
        negative = [w for w in current if shares[w.index] < -_SHARE_TOL]
        if not negative:
            return {w.index for w in current}
        weakest = min(negative, key=lambda w: (w.weight, w.index))
        current.remove(weakest)
    return set()


def partition_interferer_bits(budget_bi, weights, nt: int) -> dict:
    """Closed-form fractional split of the interferer budget over the
    effective set:

        B_l = budget/m + (nt-1) * log2(weight_l / GM)

    The shares sum to the budget and are nonnegative by construction of the
    effective set (tiny negative float noise is clamped to zero).
    """
    budget_bi = float(budget_bi)
    if budget_bi < 0:
        raise ValueError(f"budget_bi must be >= 0, got {budget_bi}")
    weights = list(weights)
    if not weights:
        if budget_bi > 0:
            raise ValueError("cannot split a positive budget over an empty set")
        return {}
    nt = int(nt)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    m = len(weights)
    gm = _geometric_mean(weights)
    shares = {}
    for w in weights:
        share = budget_bi / m + (nt - 1) * math.log2(w.weight / gm)
        if share < -_SHARE_TOL:
            raise ValueError(
                f"negative share {share!r} for index {w.index}; "
                "prune with effective_interferer_set first"
            )
        shares[w.index] = max(0.0, share)
    return shares


def desired_bits_low_snr(btot, rho: float, weights, nt: int) -> float:
    """Low-SNR closed form for the desired-channel bits:

        B_k = btot/(m+1) - ((nt-1) m/(m+1)) * log2(rho * (nt/(nt-1)) * GM)

    clamped to [0, btot], with m the number of weighted interferers.
    Returns 0 when the antennas are fully consumed by nulling (nt == m+1):
    the beam no longer depends on the desired direction, so feeding it back
    is useless. With no weighted interferers at all, every bit goes to the
    desired channel.
    """
    btot = float(btot)
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    rho = float(rho)
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    weights = list(weights)
    nt = int(nt)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    if not weights:
        return btot
    m = len(weights)
    if nt == m + 1:
        return 0.0
    x = rho * (nt / (nt - 1)) * _geometric_mean(weights)
    if x <= 0.0:
        return btot
    bk = btot / (m + 1) - ((nt - 1) * m / (m + 1)) * math.log2(x)
    return min(btot, max(0.0, bk))


def desired_bits_high_snr(nt: int, k_eff: int, btot) -> float:
    """High-SNR closed form, independent of the SNR itself:

        B_k = (nt-1) * log2((k_eff - 1) * Gamma(nt/(nt-1)))

    clamped to [0, btot]; k_eff is the effective interferer count and
    k_eff == 1 clamps to 0 (log of zero).
    """
    nt = int(nt)
    k_eff = int(k_eff)
    btot = float(btot)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    if k_eff < 1:
        raise ValueError(f"k_eff must be >= 1, got {k_eff}")
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    if k_eff == 1:
        return 0.0
    gamma_c = math.exp(ln_gamma(nt / (nt - 1)))
    bk = (nt - 1) * math.log2((k_eff - 1) * gamma_c)
    return min(btot, max(0.0, bk))


def round_allocation(desired_bits, interferer_bits, btot: int, objective,
                     locked=(), polish: bool = False) -> BitAllocation:
    """Round a fractional allocation to integers summing exactly to btot.

    Evaluates the convex objective on the floor/ceil corners of every
    coordinate, greedily repairs each corner's budget one bit at a time
    along the smallest objective increase, then walks single-bit moves from
    the best candidate while they strictly improve. Already-integer
    feasible input is returned unchanged unless polish is set, in which
    case the descent also runs from integer input (the input is then a
    starting point, not a fixed point). Objective ties resolve to the
    lexicographically smallest (desired, interferers...) tuple.

    Parameters
    ----------
    desired_bits : float
        Fractional desired-channel bits.
    interferer_bits : mapping index -> float
        Fractional per-interferer bits (include zero entries for channels
        that should remain addressable by the rounding moves).
    btot : int
        Exact total budget.
    objective : callable(BitAllocation) -> float
        Convex surrogate loss to minimize.
    locked : iterable of coordinate positions (0 = desired) pinned in place.
    polish : bool
        Run the descent even when the input is already integer.
    """
    btot = int(btot)
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    indices = sorted(interferer_bits)
    frac = [float(desired_bits)] + [float(interferer_bits[i]) for i in indices]
    if any(v < -_SHARE_TOL or v > btot + _SHARE_TOL for v in frac):
        raise ValueError(f"fractional values must lie in [0, {btot}], got {frac}")
    if abs(sum(frac) - btot) > 1e-6:
        raise ValueError(f"fractional values sum to {sum(frac)!r}, expected {btot}")
    locked = frozenset(locked)

    def to_alloc(tup):
        return BitAllocation(tup[0], dict(zip(indices, tup[1:])))

    cache = {}

    def obj(tup):
        if tup not in cache:
            cache[tup] = float(objective(to_alloc(tup)))
        return cache[tup]

    nearest = [int(round(v)) for v in frac]
    if not polish and all(abs(v - r) <= 1e-9 for v, r in zip(frac, nearest)) \
            and sum(nearest) == btot:
        return to_alloc(tuple(nearest))

    options = []
    for pos, v in enumerate(frac):
        lo = max(0, min(math.floor(v), btot))
        hi = max(0, min(math.ceil(v), btot))
        if pos in locked:
            lo = hi = max(0, min(int(round(v)), btot))
        options.append((lo,) if lo == hi else (lo, hi))

    def repaired(combo):
        vec = list(combo)
        while sum(vec) != btot:
            short = sum(vec) < btot
            best = None
            for pos in range(len(vec)):
                if pos in locked:
                    continue
                if not short and vec[pos] == 0:
                    continue
                vec[pos] += 1 if short else -1
                key = (obj(tuple(vec)), pos)
                if best is None or key < best[0]:
                    best = (key, tuple(vec))
                vec[pos] -= 1 if short else -1
            if best is None:
                raise ValueError("cannot repair budget with all coordinates locked")
            vec = list(best[1])
        return tuple(vec)

    candidates = {repaired(combo) for combo in itertools.product(*options)}

    best = min(candidates, key=lambda t: (obj(t), t))
    for _ in range(100 * (btot + 1)):
        base = obj(best)
        tol = 1e-12 * max(1.0, abs(base))
        move = None
        for i in range(len(best)):
            if i in locked or best[i] == 0:
                continue
            for j in range(len(best)):
                if j == i or j in locked:
                    continue
                cand = list(best)
                cand[i] -= 1
                cand[j] += 1
                cand = tuple(cand)
                value = obj(cand)
                if value < base - tol and (move is None or (value, cand) < move):
                    move = (value, cand)
        if move is None:
            break
        best = move[1]
        candidates.add(best)

    best_obj = obj(best)
    tol = 1e-12 * max(1.0, abs(best_obj))
    winner = min(t for t in candidates if obj(t) <= best_obj + tol)
    return to_alloc(winner)


def allocate(btot: int, params: LinkParams, regime: str = "auto") -> BitAllocation:
    """Full adaptive pipeline: weights, desired-channel bits by regime,
    effective-set pruning of the interferer budget, closed-form split, and
    integer rounding against the surrogate loss. The rounding step always
    runs its descent (polish=True): the regime formulas are limiting
    approximations, and when they land exactly on integers — the high-SNR
    form with a single effective interferer gives B_k = 0, leaving
    (0, btot) — the descent is what pulls the split back to the surrogate
    optimum.

    regime "auto" selects the low-SNR rule when the total interference
    power rho * sum(alpha) is at most 1, the high-SNR rule otherwise; both
    remain directly selectable. When nt == n_cells the desired channel gets
    zero bits (the nulling constraints fully determine the beam), except in
    the degenerate all-zero-weight case where the bits have nowhere better
    to go.
    """
    btot = int(btot)
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    if regime not in ("auto", "low_snr", "high_snr"):
        raise ValueError(f"unknown regime {regime!r}")
    k_int = params.n_cells - 1
    weights = [
        InterfererWeight(i, a * e * e)
        for i, (a, e) in enumerate(zip(params.alphas, params.eta_interferers))
        if a * e * e > 0.0
    ]
    if not weights:
        return BitAllocation(btot, {i: 0 for i in range(k_int)})

    if regime == "auto":
        regime = "low_snr" if params.rho * sum(params.alphas) <= 1.0 else "high_snr"

    locked = ()
    if params.nt == params.n_cells:
        bk = 0.0
        locked = (0,)
    elif regime == "low_snr":
        bk = desired_bits_low_snr(btot, params.rho, weights, params.nt)
    else:
        bk = desired_bits_high_snr(params.nt, len(weights), btot)

    budget_bi = btot - bk
    kset = effective_interferer_set(weights, budget_bi, params.nt)
    members = [w for w in weights if w.index in kset]
    shares = partition_interferer_bits(budget_bi, members, params.nt)
    fractional = {i: shares.get(i, 0.0) for i in range(k_int)}
    return round_allocation(
        bk, fractional, btot,
        lambda alloc: approx_loss_user(params, alloc),
        locked=locked,
        polish=True,
    )


def equal_bit_allocation(btot: int, k_cells: int) -> BitAllocation:
    """Baseline equal split over the desired channel and the interferers.

    Each of the k_cells channels gets floor(btot/k_cells); leftover bits go
    one each to the desired channel first, then to interferers by index.
    """
    btot = int(btot)
    k_cells = int(k_cells)
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    if k_cells < 1:
        raise ValueError(f"k_cells must be >= 1, got {k_cells}")
    base, rem = divmod(btot, k_cells)
    desired = base + (1 if rem > 0 else 0)
    extras = max(0, rem - 1)
    bits = {i: base + (1 if i < extras else 0) for i in range(k_cells - 1)}
    return BitAllocation(desired, bits)


def _compositions(total: int, k: int):
    if k == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in _compositions(total - v, k - 1):
            yield (v, *rest)


def exhaustive_allocation(btot: int, params: LinkParams) -> BitAllocation:
    """Brute-force oracle: minimize the surrogate loss over every integer
    composition of the budget. Ties break to the lexicographically smallest
    (desired, interferers...) tuple. Guarded against infeasible enumeration
    sizes.
    """
    btot = int(btot)
    if btot < 0:
        raise ValueError(f"btot must be >= 0, got {btot}")
    k = params.n_cells
    n_compositions = math.comb(btot + k - 1, k - 1)
    if n_compositions > 10 ** 7:
        raise CapacityError(
            f"{n_compositions} compositions exceed the enumeration cap of 1e7"
        )
    best = None
    best_obj = math.inf
    for tup in _compositions(btot, k):
        value = approx_loss_user(params, (tup[0], tup[1:]))
        if value < best_obj:
            best_obj = value
            best = tup
    return BitAllocation(best[0], dict(enumerate(best[1:])))
