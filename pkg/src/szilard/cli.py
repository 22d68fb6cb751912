"""Command-line front end.

Exit codes: 0 success, 1 domain or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bec, combinatorics, engine, oracle
from .combinatorics import CapacityError
from .units import CONSTANTS, convert_work

STATISTICS = {s.value: s for s in engine.Statistics}
SWEEP_VARIABLES = ("p", "N", "gamma", "T")
SWEEP_QUANTITIES = {
    "work": "W",
    "binding": "E_b",
    "capacitive1": "E1_c",
    "capacitive2": "E2_c",
    "gamma": "gamma",
}
ENERGY_QUANTITIES = {"work", "binding", "capacitive1", "capacitive2"}

DEFAULT_MASS = 1e-5  # in units of the free-electron mass
DEFAULT_TRAP_LENGTH = 100e-6
DEFAULT_BEC_TEMP = 10.0
DEFAULT_BEC_N = 1000

# Published order-of-magnitude estimates for the polariton set-up
# (m_b = 1e-5 m_0, L_t = 100 um, N = 1e3), shown next to computed values.
PUBLISHED_ESTIMATES = {
    "T_c [K]": 10.0,
    "lambda_db(10 K) [um]": 5.0,
    "lambda_db(1 K) [um]": 17.0,
    "spacing [um]": 0.1,
    "gamma(1 K)": 0.04,
    "gamma(10 K)": 0.004,
    "E1_c [meV]": 0.008,
}


class UsageError(Exception):
    pass


def precision() -> int:
    raw = os.environ.get("SZILARD_PRECISION")
    if raw is None:
        return 12
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"SZILARD_PRECISION must be an integer, got {raw!r}")
    if not 1 <= digits <= 17:
        raise UsageError(f"SZILARD_PRECISION must lie in [1, 17], got {digits}")
    return digits


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0:
        x = 0.0  # drop negative zero
    return format(x, f".{precision()}g")


def _json_value(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    if text in ("true", "false"):
        return text == "true"
    return text


def render(header: list[str], rows: list[list], out_format: str) -> str:
    cells = [[fmt(v) for v in row] for row in rows]
    if out_format == "json":
        objs = [dict(zip(header, map(_json_value, row))) for row in cells]
        return json.dumps(objs, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(cells)
    return buf.getvalue()


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def print_pairs(pairs: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        print(f"{key:<{width}}  {fmt(value)}")


def _with_meV(pairs, name, value, temp):
    pairs.append((f"{name} [k_B T]", value))
    if temp is not None:
        pairs.append((f"{name} [meV]", convert_work(value, temp).meV))


# -- single-shot commands ---------------------------------------------------


def cmd_work(args) -> int:
    config = engine.EngineConfig(
        n_particles=args.n,
        statistics=STATISTICS[args.statistics],
        purity=args.p,
        bias_r=args.bias,
        gamma=args.gamma,
        temperature=args.temp,
    )
    result = engine.evaluate(config)
    total = result.total
    if args.n_fermions:
        if config.statistics is not engine.Statistics.BOSON_LOWT:
            raise UsageError("--n-fermions only combines with --statistics boson-lowT")
        total = engine.work_mixed_lowT(args.n, args.n_fermions, args.gamma)
    pairs = []
    _with_meV(pairs, "work", total, args.temp)
    if config.statistics is engine.Statistics.DISTINGUISHABLE and args.bias:
        pairs.append(("closed form -ln(1-beta^2)", engine.work_biased(args.n, args.bias)))
    if result.approximation_flags:
        pairs.append(("flags", ",".join(sorted(result.approximation_flags))))
    print_pairs(pairs)
    if args.branches and result.per_branch:
        rows = [[b.m, b.f, b.f_star, b.contribution] for b in result.per_branch]
        sys.stdout.write(render(["m", "f_m", "f_star_m", "contribution"], rows, "csv"))
    return 0


def cmd_binding(args) -> int:
    pairs = []
    if args.p is not None:
        _with_meV(pairs, "E_b", engine.binding_two_bosons(args.p), args.temp)
    else:
        value = engine.binding_energy_N(args.n, args.gamma)
        _with_meV(pairs, "E_b", value, args.temp)
    print_pairs(pairs)
    return 0


def cmd_capacitive(args) -> int:
    pairs = []
    _with_meV(pairs, "E1_c", engine.capacitive_energy_first(args.n, args.gamma), args.temp)
    if args.n >= 2:
        _with_meV(pairs, "E2_c", engine.capacitive_energy_second(args.n, args.gamma), args.temp)
    print_pairs(pairs)
    return 0


def cmd_critical_n(args) -> int:
    n_gamma = engine.critical_boson_number(args.gamma, cap=args.cap)
    if n_gamma is None:
        print(f"no critical N up to {args.cap}")
        return 1
    print_pairs(
        [
            ("N_gamma", n_gamma),
            ("W(N_gamma - 1)", engine.work_bosons_lowT(n_gamma - 1, args.gamma)),
            ("W(N_gamma)", engine.work_bosons_lowT(n_gamma, args.gamma)),
        ]
    )
    return 0


def bec_report(mass_m0: float, trap_length, frequency, temp: float, n: int) -> list[tuple[str, object]]:
    m_b = mass_m0 * CONSTANTS.m_electron
    if trap_length is None and frequency is None:
        trap_length = DEFAULT_TRAP_LENGTH
    params = bec.BecParams(m_b, temp, n, trap_length=trap_length, axial_frequency=frequency)
    omega = params.axial_frequency
    t_c = bec.transition_temperature(n, omega)
    lam = bec.de_broglie_wavelength(m_b, temp)
    spacing = bec.interparticle_spacing(params).linear
    ratio, feasible = bec.condensation_feasible(lam, spacing)
    dn, valid = bec.number_fluctuation(temp, omega, n)
    gamma = bec.gamma_parameter(omega, temp)
    e1 = engine.capacitive_energy_first(n, gamma)
    return [
        ("trap length [um]", params.trap_length * 1e6),
        ("omega [rad/s]", omega),
        ("T_c [K]", t_c),
        ("lambda_db [um]", lam * 1e6),
        ("spacing [um]", spacing * 1e6),
        ("lambda/spacing", ratio),
        ("condensation feasible", feasible),
        ("delta_N", dn),
        ("delta_N valid", valid),
        ("gamma", gamma),
        ("E1_c [k_B T]", e1),
        ("E1_c [meV]", convert_work(e1, temp).meV),
        ("E_b [k_B T]", engine.binding_energy_N(n, gamma)),
    ]


def paper_comparison(report: dict, mass_m0, trap_length, frequency, n) -> list[list]:
    """Rows of (quantity, computed, published, ratio) for the default set-up."""
    at = {T: dict(bec_report(mass_m0, trap_length, frequency, T, n)) for T in (1.0, 10.0)}
    computed = {
        "T_c [K]": report["T_c [K]"],
        "lambda_db(10 K) [um]": at[10.0]["lambda_db [um]"],
        "lambda_db(1 K) [um]": at[1.0]["lambda_db [um]"],
        "spacing [um]": report["spacing [um]"],
        "gamma(1 K)": at[1.0]["gamma"],
        "gamma(10 K)": at[10.0]["gamma"],
        "E1_c [meV]": at[10.0]["E1_c [meV]"],
    }
    return [[k, computed[k], v, computed[k] / v] for k, v in PUBLISHED_ESTIMATES.items()]


def cmd_bec(args) -> int:
    n = args.n if args.n is not None else DEFAULT_BEC_N
    temp = args.temp if args.temp is not None else DEFAULT_BEC_TEMP
    mass = args.mass if args.mass is not None else DEFAULT_MASS
    pairs = bec_report(mass, args.trap_length, args.frequency, temp, n)
    print_pairs(pairs)
    if args.paper_compare:
        rows = paper_comparison(dict(pairs), mass, args.trap_length, args.frequency, n)
        print()
        sys.stdout.write(render(["quantity", "computed", "published", "ratio"], rows, "csv"))
    return 0


# -- sweeps and figure datasets ---------------------------------------------


@dataclass
class SweepSpec:
    variable: str
    values: list
    quantity: str = "work"
    fixed: dict = field(default_factory=dict)
    out_format: str = "csv"
    out: str | None = None


SWEEP_KEYS = {
    "variable", "start", "stop", "step", "values", "quantity", "statistics",
    "n", "p", "gamma", "bias", "temp", "mass", "trap_length", "frequency",
    "format", "out",
}


def parse_config_text(text: str) -> dict[str, str]:
    """Flat key=value lines; '#' starts a comment."""
    entries, bad = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            bad.append(f"line {lineno}: {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        entries[key.replace("-", "_").lower()] = value
    if bad:
        raise UsageError("malformed config lines: " + "; ".join(bad))
    return entries


def range_values(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise UsageError("step must be positive")
    if stop < start:
        return []
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(count)]


def build_sweep_spec(entries: dict[str, str]) -> SweepSpec:
    unknown = sorted(set(entries) - SWEEP_KEYS)
    if unknown:
        raise UsageError("unknown sweep keys: " + ", ".join(unknown))
    bad = []
    variable = entries.get("variable")
    if variable not in SWEEP_VARIABLES:
        bad.append("variable")
    quantity = entries.get("quantity", "work")
    if quantity not in SWEEP_QUANTITIES:
        bad.append("quantity")
    out_format = entries.get("format", "csv")
    if out_format not in ("csv", "json"):
        bad.append("format")

    def number(key, conv=float):
        try:
            return conv(entries[key])
        except (TypeError, ValueError):
            bad.append(key)
            return None

    values = []
    if "values" in entries:
        try:
            values = [float(v) for v in entries["values"].split(",") if v.strip()]
        except ValueError:
            bad.append("values")
    elif all(k in entries for k in ("start", "stop", "step")):
        start, stop, step = number("start"), number("stop"), number("step")
        if None not in (start, stop, step):
            if step <= 0:
                bad.append("step")
            else:
                values = range_values(start, stop, step)
    else:
        bad.extend(k for k in ("start", "stop", "step") if k not in entries)
    if variable == "N" and any(v != int(v) or v < 1 for v in values):
        bad.append("values")
    fixed = {}
    for key, conv in (("n", int), ("p", float), ("gamma", float), ("bias", float),
                      ("temp", float), ("mass", float), ("trap_length", float),
                      ("frequency", float)):
        if key in entries:
            fixed[key] = number(key, conv)
    if "statistics" in entries:
        if entries["statistics"] in STATISTICS:
            fixed["statistics"] = entries["statistics"]
        else:
            bad.append("statistics")
    if bad:
        raise UsageError("invalid sweep keys: " + ", ".join(dict.fromkeys(bad)))
    if not values:
        raise UsageError("sweep range is empty")
    if variable == "N":
        values = [int(v) for v in values]
    return SweepSpec(variable, values, quantity, fixed, out_format, entries.get("out"))


def _point(spec: SweepSpec, value) -> dict:
    point = {
        "n": 1, "p": 1.0, "gamma": 0.0, "bias": 0.0, "temp": None,
        "mass": DEFAULT_MASS, "trap_length": None, "frequency": None,
        "statistics": None,
    }
    point.update(spec.fixed)
    key = {"N": "n", "T": "temp"}.get(spec.variable, spec.variable)
    point[key] = value
    if point["statistics"] is None:
        if spec.variable == "p":
            point["statistics"] = "two-boson"
        elif spec.variable == "gamma" or point["gamma"]:
            point["statistics"] = "boson-lowT"
        else:
            point["statistics"] = "distinguishable"
    return point


def evaluate_quantity(quantity: str, point: dict) -> float:
    N, gamma = point["n"], point["gamma"]
    if quantity == "work":
        config = engine.EngineConfig(
            n_particles=N,
            statistics=STATISTICS[point["statistics"]],
            purity=point["p"],
            bias_r=point["bias"],
            gamma=gamma,
        )
        return engine.evaluate(config).total
    if quantity == "binding":
        if point["statistics"] == "two-boson":
            return engine.binding_two_bosons(point["p"])
        return engine.binding_energy_N(N, gamma)
    if quantity == "capacitive1":
        return engine.capacitive_energy_first(N, gamma)
    if quantity == "capacitive2":
        return engine.capacitive_energy_second(N, gamma)
    if point["temp"] is None:
        raise UsageError("quantity gamma needs a temperature")
    m_b = point["mass"] * CONSTANTS.m_electron
    omega = point["frequency"]
    if omega is None:
        omega = bec.trap_frequency(point["trap_length"] or DEFAULT_TRAP_LENGTH, m_b)
    return bec.gamma_parameter(omega, point["temp"])


def sweep_table(spec: SweepSpec) -> tuple[list[str], list[list]]:
    column = SWEEP_QUANTITIES[spec.quantity]
    header = [spec.variable, column]
    with_meV = spec.quantity in ENERGY_QUANTITIES and (
        spec.variable == "T" or spec.fixed.get("temp") is not None
    )
    if with_meV:
        header.append(f"{column}_meV")
    rows = []
    for value in spec.values:
        point = _point(spec, value)
        result = evaluate_quantity(spec.quantity, point)
        row = [value, result]
        if with_meV:
            row.append(convert_work(result, point["temp"]).meV)
        rows.append(row)
    return header, rows


def _parity(N: int) -> str:
    return "odd" if N % 2 else "even"


def figure_table(name: str) -> tuple[list[str], list[list]]:
    if name == "fig2":
        spec = SweepSpec("p", range_values(0.0, 1.0, 0.01), "binding")
        return sweep_table(spec)
    if name == "fig4":
        header = ["N", "parity", "E1_c_gamma0", "E1_c_gamma0.1", "E2_c_gamma0"]
        rows = [
            [N, _parity(N),
             engine.capacitive_energy_first(N, 0.0),
             engine.capacitive_energy_first(N, 0.1),
             engine.capacitive_energy_second(N, 0.0)]
            for N in range(2, 61)
        ]
        return header, rows
    if name == "fig5":
        gammas = (0.0, 0.05, 0.1)
        header = ["N", "parity"] + [f"E_b_gamma{g:g}" for g in gammas]
        rows = [[N, _parity(N)] + [engine.binding_energy_N(N, g) for g in gammas] for N in range(2, 61)]
        return header, rows
    raise UsageError(f"unknown figure {name!r}")


def cmd_figure(args) -> int:
    header, rows = figure_table(args.name)
    emit(render(header, rows, args.format), args.out)
    return 0


def cmd_sweep(args) -> int:
    entries = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                entries = parse_config_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
    overrides = {
        "variable": args.variable, "start": args.start, "stop": args.stop,
        "step": args.step, "values": args.values, "quantity": args.quantity,
        "statistics": args.statistics, "n": args.n, "p": args.p,
        "gamma": args.gamma, "bias": args.bias, "temp": args.temp,
        "mass": args.mass, "trap_length": args.trap_length,
        "frequency": args.frequency, "format": args.format, "out": args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            entries[key] = str(value)
    if args.values is not None:
        # explicit values on the command line replace a range from the file
        for key in ("start", "stop", "step"):
            if getattr(args, key) is None:
                entries.pop(key, None)
    spec = build_sweep_spec(entries)
    header, rows = sweep_table(spec)
    emit(render(header, rows, spec.out_format), spec.out)
    return 0


# -- oracle -------------------------------------------------------------------


def oracle_rows(kind: str, N: int) -> list[tuple[str, object, object]]:
    """(check, enumerated, analytic) triples; a row passes when both agree."""
    if kind == "distinguishable":
        states = oracle.enumerate_distinguishable(N)
        return [
            ("states", len(states.states), 2**N),
            ("histogram", states.histogram_list(), [combinatorics.multiplicity(N, m) for m in range(N + 1)]),
        ]
    if kind == "particles":
        states = oracle.enumerate_indistinguishable_particles(N)
        return [("arrangements", len(states.states), N + 1)]
    if kind == "sides":
        report = oracle.side_class_report(N)
        counts = [report["class_counts"].get(k, 0) for k in range(N // 2 + 1)]
        probs = [report["microstate_probabilities"].get(k, Fraction(0)) for k in range(N // 2 + 1)]
        return [
            ("classes", report["classes"], combinatorics.omega_indistinguishable_partitions(N)),
            ("class counts", counts, counts),
            ("class probabilities", [str(p) for p in probs], [str(p) for p in probs]),
        ]
    if kind == "stirling":
        if N > 10:
            raise CapacityError("set-partition enumeration is limited to n <= 10")
        return [
            (f"S({N},{k})", oracle.count_set_partitions(N, k), combinatorics.stirling2(N, k))
            for k in range(N + 1)
        ]
    if kind == "partitions":
        parts = combinatorics.integer_partitions(N)
        rows = [("p(N)", len(parts), oracle.partition_numbers(N)[N])]
        if N == 20:
            found = set(parts)
            for shape in ((6, 4, 4, 3, 2, 1), (7, 3, 3, 3, 2, 1, 1), (10, 4, 4, 1, 1)):
                rows.append((f"contains {shape}", shape in found, True))
        return rows
    raise UsageError(f"unknown oracle kind {kind!r}")


def cmd_oracle(args) -> int:
    rows = oracle_rows(args.kind, args.N)
    failed = False
    for check, got, expected in rows:
        ok = got == expected
        failed |= not ok
        shown = ",".join(map(str, got)) if isinstance(got, list) else got
        print(f"{check}: {shown} [{'PASS' if ok else 'FAIL'}]")
    return 1 if failed else 0


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szilard",
        description="Szilard-engine work, binding and capacitive energies, BEC estimates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_flags(p, defaults=True):
        d = (lambda v: v) if defaults else (lambda v: None)
        p.add_argument("--n", type=int, default=d(1), help="particle number N")
        p.add_argument("--p", type=float, default=d(1.0), help="bosonic quality p in [0, 1]")
        p.add_argument("--gamma", type=float, default=d(0.0), help="confinement hbar*omega/(k_B T)")
        p.add_argument("--temp", type=float, default=None, help="temperature in K (adds meV output)")

    p = sub.add_parser("work", help="extractable work")
    p.add_argument("--statistics", choices=sorted(STATISTICS), default="distinguishable")
    engine_flags(p)
    p.add_argument("--bias", type=float, default=0.0, help="left-side preference r")
    p.add_argument("--n-fermions", type=int, default=0, help="fermions added to a boson-lowT engine")
    p.add_argument("--branches", action="store_true", help="print per-m decomposition")
    p.set_defaults(func=cmd_work)

    p = sub.add_parser("binding", help="binding energy (two-boson with --p, else N-boson)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--temp", type=float, default=None)
    p.set_defaults(func=cmd_binding)

    p = sub.add_parser("capacitive", help="information capacitive energies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--temp", type=float, default=None)
    p.set_defaults(func=cmd_capacitive)

    p = sub.add_parser("critical-n", help="boson number where confined work vanishes")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--cap", type=int, default=10**5)
    p.set_defaults(func=cmd_critical_n)

    p = sub.add_parser("bec", help="condensation estimates for a trapped 1-D boson gas")
    p.add_argument("--mass", type=float, default=None, help="boson mass in units of m_0")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--trap-length", type=float, default=None, help="trap length in m")
    group.add_argument("--frequency", type=float, default=None, help="axial frequency in rad/s")
    p.add_argument("--temp", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--paper-compare", action="store_true",
                   help="print published estimates next to computed values")
    p.set_defaults(func=cmd_bec)

    p = sub.add_parser("figure", help="emit a figure dataset")
    p.add_argument("name", choices=("fig2", "fig4", "fig5"))
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("sweep", help="parameter sweep from flags and/or a key=value file")
    p.add_argument("--config", default=None)
    p.add_argument("--variable", default=None)
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--values", default=None, help="comma-separated explicit values")
    p.add_argument("--quantity", default=None)
    p.add_argument("--statistics", default=None)
    engine_flags(p, defaults=False)
    p.add_argument("--bias", type=float, default=None)
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--trap-length", type=float, default=None)
    p.add_argument("--frequency", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force verification report")
    p.add_argument("kind", choices=("distinguishable", "particles", "sides", "partitions", "stirling"))
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"szilard: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, CapacityError, OSError) as exc:
        print(f"szilard: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
