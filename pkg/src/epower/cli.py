"""Command line front end: gate reports, ensemble sweeps, census, scaling tables.

Exit codes: 0 success, 2 parse failure, 3 validation failure,
4 optimizer non-convergence.  The environment variable EPOWER_THREADS
overrides the worker count used for data-parallel sweeps; results are
independent of it because work is split into fixed chunks merged in order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .ensembles import (
    RngSeed,
    haar_orthogonals,
    haar_unitaries,
    mc_entangling_power,
    permutation_count,
    permutation_words,
    random_diagonal_phases,
)
from .gates import (
    DIAGONAL_MAX,
    deutsch,
    diagonal_gate,
    fredkin,
    g_n,
    h_d8,
    h_u8,
    identity_gate,
    maximize_diagonal_epower,
    swap_gate,
    toffoli,
)
from .gatefile import GateFileError, read_gate_file
from .power import (
    epower_batch,
    epower_one_tangle,
    max_tau_one,
    mean_orthogonal,
    mean_qudit_orthogonal,
    mean_qudit_unitary,
    mean_unitary,
    upper_bound_one_tangle,
    upper_bound_qudit,
)
from .tensorops import GateMatrix, SubsystemDims, ValidationError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NO_CONVERGENCE = 4

_SWEEP_CHUNK = 5040
_QUBIT3 = SubsystemDims((2, 2, 2))


class CliParseError(ValueError):
    pass


def worker_count() -> int:
    env = os.environ.get("EPOWER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise CliParseError(f"EPOWER_THREADS must be an integer, got {env!r}") from exc
    return min(8, os.cpu_count() or 1)


def _map_chunks(fn: Callable, chunks: Sequence) -> list:
    """Apply fn to chunks on a worker pool; merge preserves chunk order."""
    workers = worker_count()
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# gate specs
# ---------------------------------------------------------------------------


def _parse_floats(tokens: Sequence[str], what: str) -> list[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise CliParseError(f"bad {what}: {exc}") from exc


def resolve_gate(spec: str, dims_flag: list[int] | None) -> GateMatrix:
    """Builtin gate name or gate-file path -> validated GateMatrix."""
    head, _, rest = spec.partition(":")
    if head == "identity":
        if dims_flag is None:
            raise CliParseError("identity needs --dims")
        return identity_gate(dims_flag)
    if head == "swap":
        dims = dims_flag if dims_flag is not None else [2, 2]
        if len(dims) != 2 or dims[0] != dims[1]:
            raise CliParseError("swap needs two equal dims")
        return swap_gate(dims[0])
    fixed = {"fredkin": fredkin, "toffoli": toffoli, "h_d8": h_d8, "h_u8": h_u8}
    if head in fixed:
        gate = fixed[head]()
    elif head == "deutsch":
        if not rest:
            _bad(spec)
        gate = deutsch(_parse_floats([rest], "deutsch angle")[0])
    elif head == "gn":
        parts = rest.split(":")
        if len(parts) != 2:
            _bad(spec)
        try:
            n = int(parts[0])
        except ValueError as exc:
            raise CliParseError(f"bad gn qubit count: {parts[0]!r}") from exc
        gate = g_n(n, _parse_floats([parts[1]], "gn angle")[0])
    elif head == "diag":
        phases = _parse_floats(rest.split(","), "diag phases")
        if len(phases) != 8:
            raise CliParseError(f"diag needs 8 comma-separated phases, got {len(phases)}")
        gate = diagonal_gate(phases)
    else:
        path = Path(spec)
        if not path.exists():
            raise CliParseError(f"unknown gate {spec!r} and no such file")
        gate = read_gate_file(path)
    if dims_flag is not None and tuple(dims_flag) != gate.dims.dims:
        raise CliParseError(f"--dims {dims_flag} conflicts with gate dims {gate.dims.dims}")
    return gate


def _bad(spec: str):
    raise CliParseError(f"malformed gate spec {spec!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_gate(args: argparse.Namespace) -> int:
    gate = resolve_gate(args.gate, args.dims)
    report = epower_one_tangle(gate)
    bound = upper_bound_one_tangle(gate.dims)
    mc = None
    if args.mc_samples > 0:
        mc = mc_entangling_power(gate, args.mc_samples, RngSeed(args.seed))
    if args.json:
        payload = {
            "gate": args.gate,
            "dims": list(gate.dims),
            "per_bipartition": {str(bp): v for bp, v in report.per_bipartition.items()},
            "total": report.total,
            "upper_bound": float(bound),
            "upper_bound_exact": str(bound),
        }
        if mc is not None:
            payload["mc"] = {
                "samples": args.mc_samples,
                "seed": args.seed,
                "estimate": mc.estimate,
                "std_error": mc.std_error,
            }
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"gate {args.gate}  dims {' '.join(str(d) for d in gate.dims)}")
    for bp, v in report.per_bipartition.items():
        print(f"  eps[{bp}] = {_fmt(v)}")
    print(f"  eps_1 = {_fmt(report.total)}")
    print(f"  upper bound = {_fmt(float(bound))} ({bound})")
    if mc is not None:
        print(
            f"  MC (N={args.mc_samples}, seed={args.seed}): "
            f"{_fmt(mc.estimate)} +/- {_fmt(mc.std_error)}"
        )
    return EXIT_OK


@dataclass(frozen=True)
class ClassTable:
    """Census of entangling-power classes keyed by the integer 162*eps_1."""

    rows: tuple[tuple[int, int], ...]
    total: int

    def __post_init__(self) -> None:
        if sum(count for _, count in self.rows) != self.total:
            raise ValidationError("class sizes do not sum to the ensemble size")

    def mean(self) -> Fraction:
        return Fraction(sum(k * c for k, c in self.rows), 162 * self.total)


def _permutation_matrix_batch(words: np.ndarray) -> np.ndarray:
    m, d = words.shape
    mats = np.zeros((m, d, d))
    rows = np.repeat(np.arange(m), d)
    mats[rows, words.reshape(-1), np.tile(np.arange(d), m)] = 1.0
    return mats


def permutation_census(max_residual: float = 1e-9) -> ClassTable:
    """eps_1 census of all 40320 three-qubit permutation gates."""
    words = np.array(list(permutation_words(8)), dtype=np.intp)
    chunks = [words[i : i + _SWEEP_CHUNK] for i in range(0, len(words), _SWEEP_CHUNK)]

    def class_keys(chunk: np.ndarray) -> np.ndarray:
        eps = epower_batch(_permutation_matrix_batch(chunk), _QUBIT3)
        keys = np.rint(eps * 162.0)
        residual = np.max(np.abs(eps * 162.0 - keys))
        if residual > max_residual:
            raise RuntimeError(
                f"162*eps deviates from an integer by {residual:.3e}; "
                "the closed form is broken"
            )
        return keys.astype(int)

    keys = np.concatenate(_map_chunks(class_keys, chunks))
    values, counts = np.unique(keys, return_counts=True)
    return ClassTable(tuple(zip(values.tolist(), counts.tolist())), int(len(keys)))


def cmd_permutations(args: argparse.Namespace) -> int:
    if args.qubits != 3:
        raise CliParseError("only --qubits 3 is supported (8! gates)")
    table = permutation_census()
    lines = ["epsilon_times_162,count"]
    lines += [f"{k},{c}" for k, c in table.rows]
    lines.append(f"# classes={len(table.rows)} total={table.total} mean={table.mean()}")
    _emit(lines, args.out)
    return EXIT_OK


def _ensemble_epsilons(ensemble: str, n_samples: int, seed: int) -> np.ndarray:
    gen = RngSeed(seed).generator()
    if ensemble == "perm":
        words = np.array(list(permutation_words(8)), dtype=np.intp)
        if n_samples < len(words):
            words = words[gen.choice(len(words), size=n_samples, replace=False)]
        chunks = [words[i : i + _SWEEP_CHUNK] for i in range(0, len(words), _SWEEP_CHUNK)]
        parts = _map_chunks(
            lambda w: epower_batch(_permutation_matrix_batch(w), _QUBIT3), chunks
        )
        return np.concatenate(parts)
    draws = []
    remaining = n_samples
    while remaining > 0:
        m = min(_SWEEP_CHUNK, remaining)
        if ensemble == "cue":
            draws.append(haar_unitaries(8, m, gen))
        elif ensemble == "cre":
            draws.append(haar_orthogonals(8, m, gen))
        elif ensemble == "cpe":
            phases = random_diagonal_phases(8, m, gen)
            mats = np.zeros((m, 8, 8), dtype=complex)
            mats[:, np.arange(8), np.arange(8)] = np.exp(1j * phases)
            draws.append(mats)
        else:
            raise CliParseError(f"unknown ensemble {ensemble!r}")
        remaining -= m
    parts = _map_chunks(lambda mats: epower_batch(mats, _QUBIT3), draws)
    return np.concatenate(parts)


def cmd_histogram(args: argparse.Namespace) -> int:
    n_samples = args.samples
    if args.ensemble == "perm":
        n_samples = min(n_samples, permutation_count(8))
    if n_samples < 1 or args.bins < 1:
        raise CliParseError("--samples and --bins must be positive")
    eps = _ensemble_epsilons(args.ensemble, n_samples, args.seed)
    counts, edges = np.histogram(eps, bins=args.bins, range=(0.0, 1.0))
    probs = counts / eps.size
    lines = ["bin_left,bin_right,probability"]
    lines += [
        f"{_fmt(edges[i])},{_fmt(edges[i + 1])},{_fmt(probs[i])}" for i in range(args.bins)
    ]
    stderr = eps.std(ddof=1) / np.sqrt(eps.size)
    lines.append(
        f"# ensemble={args.ensemble} samples={eps.size} "
        f"mean={_fmt(eps.mean())} std_error={_fmt(stderr)}"
    )
    _emit(lines, args.out)
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace) -> int:
    if args.mode == "qudit-d":
        lines = ["d,mean_unitary,upper_bound,max_tau_one"]
        for d in range(args.d_min, args.d_max + 1):
            lines.append(
                f"{d},{_fmt(float(mean_qudit_unitary(3, d)))},"
                f"{_fmt(float(upper_bound_qudit(3, d)))},{_fmt(float(max_tau_one(d)))}"
            )
    else:
        lines = ["n,d,mean_over_bound,orthogonal_over_unitary"]
        for d in args.d_values:
            for n in range(args.n_min, args.n_max + 1):
                mu = mean_qudit_unitary(n, d)
                ratio_bound = mu / upper_bound_qudit(n, d)
                ratio_groups = mean_qudit_orthogonal(n, d) / mu
                lines.append(f"{n},{d},{_fmt(float(ratio_bound))},{_fmt(float(ratio_groups))}")
    _emit(lines, args.out)
    return EXIT_OK


def cmd_diag_maximize(args: argparse.Namespace) -> int:
    result = maximize_diagonal_epower(grid=args.grid, seed=args.seed)
    gap = abs(result.value - float(DIAGONAL_MAX))
    print(f"grid {args.grid}^3 + BFGS refinement")
    print(f"argmax deltas = ({', '.join(_fmt(d) for d in result.deltas)})")
    print(f"max eps_1 = {_fmt(result.value)}")
    print(f"|max - 16/27| = {gap:.3e}")
    print(f"gradient norm = {result.grad_norm:.3e}")
    if not result.converged or gap > 1e-8:
        print("non-convergence: gradient or value criterion failed", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_means(args: argparse.Namespace) -> int:
    if (args.dims is None) == (args.qudit is None):
        raise CliParseError("give exactly one of --dims or --qudit n d")
    if args.qudit is not None:
        n, d = args.qudit
        dims = SubsystemDims((d,) * n)
    else:
        dims = SubsystemDims(tuple(args.dims))
    mu = mean_unitary(dims)
    mo = mean_orthogonal(dims)
    ub = upper_bound_one_tangle(dims)
    print(f"dims {' '.join(str(d) for d in dims)}")
    print(f"  mean over unitary group     = {mu} = {_fmt(float(mu))}")
    print(f"  mean over orthogonal group  = {mo} = {_fmt(float(mo))}")
    print(f"  upper bound                 = {ub} = {_fmt(float(ub))}")
    if args.mc > 0:
        d_total = dims.total_dim
        for label, stream, sampler in (
            ("unitary", 1, lambda g, m: haar_unitaries(d_total, m, g)),
            ("orthogonal", 2, lambda g, m: haar_orthogonals(d_total, m, g)),
        ):
            gen = RngSeed(args.seed, stream).generator()
            eps = []
            remaining = args.mc
            while remaining > 0:
                m = min(_SWEEP_CHUNK, remaining)
                eps.append(epower_batch(sampler(gen, m), dims))
                remaining -= m
            eps = np.concatenate(eps)
            se = eps.std(ddof=1) / np.sqrt(eps.size)
            print(f"  MC {label} (N={args.mc}): {_fmt(eps.mean())} +/- {_fmt(se)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epower",
        description="Entangling power of multipartite unitary gates (one-tangle measure).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gate", help="report eps_1 of a builtin gate or gate file")
    p.add_argument(
        "gate",
        help="identity | swap | fredkin | toffoli | deutsch:<theta> | gn:<n>:<alpha> "
        "| h_d8 | h_u8 | diag:<8 phases> | path to gate file",
    )
    p.add_argument("--dims", type=int, nargs="+", help="local dimensions (identity/swap)")
    p.add_argument(
        "--mc-samples",
        type=int,
        nargs="?",
        const=20000,
        default=0,
        help="Monte Carlo cross-check samples (flag without value: 20000)",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("permutations", help="census of three-qubit permutation gates")
    p.add_argument("--qubits", type=int, default=3)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_permutations)

    p = sub.add_parser("histogram", help="eps_1 histogram over a three-qubit ensemble")
    p.add_argument("--ensemble", choices=("cue", "cre", "cpe", "perm"), required=True)
    p.add_argument("--samples", type=int, default=40320)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("scaling", help="mean/bound scaling tables for qudit gates")
    p.add_argument("--mode", choices=("qudit-d", "qudit-n"), required=True)
    p.add_argument("--d-min", type=int, default=2)
    p.add_argument("--d-max", type=int, default=16)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--d-values", type=int, nargs="+", default=[2, 4, 16])
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("diag-maximize", help="maximize eps_1 over diagonal gates")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diag_maximize)

    p = sub.add_parser("means", help="exact Haar means and upper bound")
    p.add_argument("--dims", type=int, nargs="+")
    p.add_argument("--qudit", type=int, nargs=2, metavar=("N", "D"))
    p.add_argument("--mc", type=int, default=0, help="also report MC ensemble means")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_means)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliParseError, GateFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
