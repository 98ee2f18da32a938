"""Monte Carlo engine: per-trial rate evaluation and deterministic sweeps.

Trials are embarrassingly parallel: trial t of sweep point p always uses
the stream (master_seed, p << 40 | t), and the per-trial results are placed
into a trial-indexed array before a single ordered reduction. The output is
therefore byte-identical for any worker count.
"""

import concurrent.futures
from dataclasses import dataclass, replace

import numpy as np

from ..allocator import BitAllocation, allocate, equal_bit_allocation
from ..errors import ConfigError
from ..fading import gauss_markov_evolve, rayleigh_channel
from ..numerics import RngStream
from ..precoder import _nulling_beams, sinr, sum_rate
from ..quantizer import generate_codebook, quantize, statistical_quantize
from .config import SimConfig
from .scenario import Scenario, build_hex_scenario, user_link_params

__all__ = [
    "CSV_HEADER",
    "DISTANCE_FRACTIONS",
    "BITS_GRID",
    "DELAY_GRID",
    "SweepRow",
    "SweepReport",
    "run_trial",
    "run_sweep",
]

CSV_HEADER = "sweep_value,rate_adaptive,rate_equal,rate_fullcsi,norm_adaptive,norm_equal,allocation"

DISTANCE_FRACTIONS = tuple(i / 10 for i in range(1, 11))
BITS_GRID = (7, 14, 21, 28, 35)
DELAY_GRID = (0, 1, 2, 3, 4, 5)


@dataclass(frozen=True)
class SweepRow:
    sweep_value: float
    rate_adaptive: float
    rate_equal: float
    rate_fullcsi: float
    norm_adaptive: float
    norm_equal: float
    allocation: tuple  # (B0, B01, ..., B06)


@dataclass(frozen=True)
class SweepReport:
    """Mean-rate results per sweep point, CSV-serializable."""

    kind: str
    rows: tuple

    def to_csv(self, path) -> None:
        """Write UTF-8, LF-terminated CSV with full double precision."""
        lines = [CSV_HEADER]
        for r in self.rows:
            alloc = "|".join(str(b) for b in r.allocation)
            lines.append(",".join((
                repr(float(r.sweep_value)),
                repr(float(r.rate_adaptive)),
                repr(float(r.rate_equal)),
                repr(float(r.rate_fullcsi)),
                repr(float(r.norm_adaptive)),
                repr(float(r.norm_equal)),
                alloc,
            )))
        data = "\n".join(lines) + "\n"
        if hasattr(path, "write"):
            path.write(data)
        else:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(data)


def _unit_rows(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _quantized_direction(direction, bits, rng, explicit_cap):
    """Quantize through an explicit fresh codebook when affordable, through
    the exact statistical equivalent above the cap."""
    if bits <= explicit_cap:
        codebook = generate_codebook(rng, bits, direction.shape[0], cap=explicit_cap)
        return quantize(direction, codebook).direction
    return statistical_quantize(direction, bits, rng).direction


def run_trial(scenario: Scenario, link, allocation: BitAllocation, rng: RngStream):
    """One Monte Carlo trial; returns (rate_limited, rate_fullcsi).

    Draws the delayed channels, quantizes each direction with its allocated
    bits, evolves the true channels forward by the respective delays, and
    evaluates the center user's rate twice: with beams built from the
    delayed/quantized CSI and with reference beams built from the true
    instantaneous CSI. Every base station nulls the fed-back directions of
    the users it interferes with; third-party users enter as isotropic unit
    directions shared by both pipelines.
    """
    nt = scenario.nt
    n_int = link.n_cells - 1
    cap = scenario.explicit_quantizer_cap
    int_bits = [allocation.interferer_bits.get(i, 0) for i in range(n_int)]

    # Delayed CSI available to the feedback link.
    h_delayed = rayleigh_channel(rng, nt)
    g_delayed = rng.complex_gaussian((n_int, nt))

    # Quantized directions: desired first, then interferers by index.
    h_hat = _quantized_direction(
        h_delayed / np.linalg.norm(h_delayed), allocation.desired_bits, rng, cap)
    g_hat = [
        _quantized_direction(
            g_delayed[l] / np.linalg.norm(g_delayed[l]), int_bits[l], rng, cap)
        for l in range(n_int)
    ]

    # True channels at the transmission instant; the interferers share one
    # eta so their innovations are drawn as a single block.
    h_now = gauss_markov_evolve(h_delayed, link.eta_desired, rng)
    g_now = gauss_markov_evolve(g_delayed, link.eta_interferers[0], rng)
    g_dir_now = _unit_rows(g_now)

    # Third-party directions: the center station's victim users, then each
    # interfering station's own user (row 0) and its other victims.
    victims = _unit_rows(rng.complex_gaussian((n_int, nt)))
    others = _unit_rows(rng.complex_gaussian((n_int, n_int, nt)))

    # One nulling stack per (station, CSI kind): limited stacks use the
    # quantized/delayed directions, full-CSI stacks the true current ones.
    stacks = np.empty((2 + 2 * n_int, 1 + n_int, nt), dtype=np.complex128)
    stacks[0, 0] = h_hat
    stacks[1, 0] = h_now / np.linalg.norm(h_now)
    stacks[0:2, 1:] = victims
    for l in range(n_int):
        stacks[2 + 2 * l:4 + 2 * l, 0] = others[l, 0]
        stacks[2 + 2 * l, 1] = g_hat[l]
        stacks[3 + 2 * l, 1] = g_dir_now[l]
        stacks[2 + 2 * l:4 + 2 * l, 2:] = others[l, 1:]
    beams = _nulling_beams(stacks)

    rate_limited = sum_rate(
        [sinr(h_now, beams[0], g_now, beams[2::2], link.rho, link.alphas)])
    rate_fullcsi = sum_rate(
        [sinr(h_now, beams[1], g_now, beams[3::2], link.rho, link.alphas)])
    return rate_limited, rate_fullcsi


def _sweep_points(kind: str, config: SimConfig):
    """(sweep_value, scenario, user_distance) for each point of a sweep."""
    base = build_hex_scenario(config)
    edge = config.cell_radius_m
    if kind == "distance":
        distances = [max(1.0, frac * edge) for frac in DISTANCE_FRACTIONS]
        return [(d, base, d) for d in distances]
    if kind == "bits":
        return [(float(b), replace(base, btot=b), edge) for b in BITS_GRID]
    if kind == "delay":
        return [
            (float(delay), replace(base, backhaul_delay_symbols=delay), edge)
            for delay in DELAY_GRID
        ]
    raise ConfigError(f"unknown sweep kind {kind!r}; expected distance, bits or delay")


def _trial_block(args):
    """Worker: evaluate trials [t0, t1) of one sweep point.

    The adaptive and equal-bit runs of a trial share the same stream key
    (common random numbers); the full-CSI reference is averaged over both.
    """
    scenario, link, alloc_adaptive, alloc_equal, seed, point_idx, t0, t1 = args
    out = np.empty((t1 - t0, 3))
    for t in range(t0, t1):
        sid = (point_idx << 40) | t
        rate_a, full_a = run_trial(scenario, link, alloc_adaptive, RngStream(seed, sid))
        rate_e, full_e = run_trial(scenario, link, alloc_equal, RngStream(seed, sid))
        out[t - t0] = (rate_a, rate_e, 0.5 * (full_a + full_e))
    return t0, out


def run_sweep(kind: str, config: SimConfig, trials: int | None = None,
              threads: int = 1, master_seed: int | None = None) -> SweepReport:
    """Sweep the requested variable and average run_trial over trials
    independent streams per point (adaptive allocation, equal-bit baseline
    and full-CSI reference). Deterministic for any worker count.
    """
    trials = config.trials if trials is None else int(trials)
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    threads = int(threads)
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    seed = config.master_seed if master_seed is None else int(master_seed)

    rows = []
    for point_idx, (value, scenario, d) in enumerate(_sweep_points(kind, config)):
        link = user_link_params(scenario, d)
        alloc_adaptive = allocate(scenario.btot, link, scenario.regime)
        alloc_equal = equal_bit_allocation(scenario.btot, link.n_cells)

        chunk = trials if threads == 1 else max(1, -(-trials // (threads * 4)))
        blocks = [
            (scenario, link, alloc_adaptive, alloc_equal, seed, point_idx,
             t0, min(t0 + chunk, trials))
            for t0 in range(0, trials, chunk)
        ]
        per_trial = np.empty((trials, 3))
        if threads == 1:
            results = map(_trial_block, blocks)
        else:
            executor = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
            try:
                results = list(executor.map(_trial_block, blocks))
            finally:
                executor.shutdown()
        for t0, block in results:
            per_trial[t0:t0 + block.shape[0]] = block

        # Single ordered reduction over the trial-indexed array.
        mean_a, mean_e, mean_f = per_trial.sum(axis=0) / trials
        rows.append(SweepRow(
            sweep_value=value,
            rate_adaptive=mean_a,
            rate_equal=mean_e,
            rate_fullcsi=mean_f,
            norm_adaptive=mean_a / mean_f,
            norm_equal=mean_e / mean_f,
            allocation=alloc_adaptive.as_tuple(),
        ))
    return SweepReport(kind, tuple(rows))
