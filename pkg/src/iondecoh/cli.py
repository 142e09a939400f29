"""Command line interface.

Subcommands: table, factor, sim, xray, bcs, classify. Shared behaviour:

* --format human|csv|json (default human); csv and json carry full float
  precision and are byte-for-byte deterministic for identical inputs.
* --output PATH writes atomically (temp file, then rename) so a failed run
  never leaves a partial file; default is stdout.
* salt data comes from --data-file, else the IONDECOH_DATA_DIR environment
  variable (a directory containing salts.csv), else the bundled table.
* exit codes: 0 success, 1 bad arguments or values, 2 unreadable or
  malformed data file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from . import core, densmat, regimes, vacuum
from .errors import IonDecohError, SaltDataError
from .materials import SaltRecord, bundled_salt_database, load_salts, salt_by_name
from .units import length_m, rate_per_s, temperature_kelvin, time_s

ENV_DATA_DIR = "IONDECOH_DATA_DIR"


class _CliUsageError(IonDecohError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliUsageError(message)


def _load_records(args) -> list[SaltRecord]:
    path = args.data_file
    if path is None:
        data_dir = os.environ.get(ENV_DATA_DIR)
        if data_dir:
            path = os.path.join(data_dir, "salts.csv")
    if path is None:
        return bundled_salt_database()
    try:
        return load_salts(path)
    except OSError as exc:
        raise SaltDataError(f"cannot read data file {path!r}: {exc}") from None


def _select_salts(records: list[SaltRecord], spec: str) -> list[SaltRecord]:
    if spec == "all":
        return list(records)
    wanted = [name.strip() for name in spec.split(",") if name.strip()]
    if not wanted:
        raise _CliUsageError("--salts must name at least one salt")
    for name in wanted:
        salt_by_name(records, name)
    # keep data-file order no matter how the request was ordered
    wanted_set = set(wanted)
    return [r for r in records if r.name in wanted_set]


def _context_from_args(args, record: SaltRecord) -> core.DecoherenceContext:
    return core.context_for_salt(
        record,
        temperature=temperature_kelvin(args.temperature),
        ion_count=args.ion_count,
    )


def _wavelength_and_rate(args, records_loader):
    if args.salt is not None:
        ctx = _context_from_args(args, salt_by_name(records_loader(), args.salt))
        return core.de_broglie_wavelength(ctx), core.scattering_rate(ctx)
    if args.wavelength is None or args.rate is None:
        raise _CliUsageError("give either --salt or both --wavelength and --rate")
    return length_m(args.wavelength), rate_per_s(args.rate)


# -- output rendering ---------------------------------------------------------

def _render_table(header, rows, fmt, json_payload):
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_cell(value) for value in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(json_payload, sort_keys=True, indent=2) + "\n"
    widths = [
        max(len(str(header[i])), *(len(_cell(row[i])) for row in rows)) if rows else len(str(header[i]))
        for i in range(len(header))
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(_cell(v).ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _deliver(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".iondecoh-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, output)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


# -- subcommand handlers ------------------------------------------------------

def _cmd_table(args) -> str:
    records = _select_salts(_load_records(args), args.salts)
    header = ["name", "tau1_1e-40s", "tau2_1e-38s", "tau1_s", "tau2_s"]
    rows = []
    salts_json = []
    for record in records:
        ctx = _context_from_args(args, record)
        t1 = core.tau1(ctx).si
        t2 = core.tau2(ctx).si
        rows.append([record.name, f"{t1 / 1e-40:.1f}", f"{t2 / 1e-38:.1f}", t1, t2])
        entry = {"name": record.name, "tau1_s": t1, "tau2_s": t2}
        if record.ref_tau1 is not None:
            entry["ref_tau1_s"] = record.ref_tau1.si
        if record.ref_tau2 is not None:
            entry["ref_tau2_s"] = record.ref_tau2.si
        salts_json.append(entry)
    payload = {
        "temperature_k": args.temperature,
        "ion_count": args.ion_count,
        "salts": salts_json,
    }
    return _render_table(header, rows, args.format, payload)


def _cmd_factor(args) -> str:
    wavelength, rate = _wavelength_and_rate(args, lambda: _load_records(args))
    value = core.decoherence_factor(
        length_m(args.dx), time_s(args.time), wavelength, rate
    )
    header = ["separation_m", "time_s", "wavelength_m", "rate_per_s", "factor"]
    row = [args.dx, args.time, wavelength.si, rate.si, value]
    payload = dict(zip(header, row))
    if args.format == "human":
        return f"decoherence factor = {value!r}\n"
    return _render_table(header, [row], args.format, payload)


def _cmd_sim(args) -> str:
    wavelength, rate = _wavelength_and_rate(args, lambda: _load_records(args))
    spec = densmat.SuperpositionSpec(
        separation=length_m(args.separation),
        width=length_m(args.width),
        relative_phase=args.phase,
    )
    state = densmat.prepare_superposition(
        spec, num_points=args.num_points, extent_widths=args.extent_widths
    )
    dt = time_s(args.t_total / args.steps)
    samples = densmat.evolve_series(
        state, rate, wavelength, dt, args.steps, spec.separation
    )
    header = ["time_s", "coherence", "trace", "purity", "min_eigenvalue"]
    rows = [[s.time, s.coherence, s.trace, s.purity, s.min_eigenvalue] for s in samples]
    payload = {
        "separation_m": args.separation,
        "width_m": args.width,
        "wavelength_m": wavelength.si,
        "rate_per_s": rate.si,
        "samples": [dict(zip(header, row)) for row in rows],
    }
    return _render_table(header, rows, args.format, payload)


def _cmd_xray(args) -> str:
    record = salt_by_name(_load_records(args), args.salt)
    ctx = _context_from_args(args, record)
    check = regimes.xray_consistency(ctx, record, time_s(args.tau_x))
    payload = {"salt": record.name, "tau1_s": core.tau1(ctx).si, **check.to_dict()}
    if args.format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    header = list(payload)
    return _render_table(header, [[payload[k] for k in header]], args.format, payload)


def _cmd_bcs(args) -> str:
    counts = sorted({int(k.strip()) for k in args.modes.split(",") if k.strip()})
    if not counts:
        raise _CliUsageError("--modes must list at least one mode count")
    if args.uniform_u is not None:
        family = lambda k: vacuum.uniform_profile(args.uniform_u, k)  # noqa: E731
    else:
        family = vacuum.pairing_family(args.gap, args.half_bandwidth, args.seed)
    header = ["modes", "log_overlap", "overlap"]
    rows = []
    for count in counts:
        log_overlap = vacuum.log_vacuum_overlap(family(count))
        rows.append([count, log_overlap, math.exp(log_overlap)])
    payload = {"points": [dict(zip(header, row)) for row in rows]}
    if len(counts) >= 3:
        payload["decay_rate_per_mode"] = vacuum.overlap_decay_rate(family, counts)
    if args.format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    text = _render_table(header, rows, args.format, payload)
    if args.format == "human" and "decay_rate_per_mode" in payload:
        text += f"decay rate per mode = {payload['decay_rate_per_mode']!r}\n"
    return text


def _cmd_classify(args) -> str:
    if args.salt is not None:
        ctx = _context_from_args(args, salt_by_name(_load_records(args), args.salt))
        t1, t2 = core.tau1(ctx), core.tau2(ctx)
    elif args.tau1 is not None and args.tau2 is not None:
        t1, t2 = time_s(args.tau1), time_s(args.tau2)
    else:
        raise _CliUsageError("give either --salt or both --tau1 and --tau2")
    report = regimes.classify(
        t1,
        t2,
        time_s(args.tau_dyn),
        coherent_phase_observed=args.observed_coherence,
        threshold_ratio=args.threshold,
    )
    payload = report.to_dict()
    if args.salt is not None:
        payload["salt"] = args.salt
    if args.format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.format == "csv":
        header = ["tau1_s", "tau2_s", "tau_dyn_s", "tau_dec_s", "timescale_ratio", "verdict"]
        row = [t1.si, t2.si, args.tau_dyn, payload["tau_dec_s"], payload["timescale_ratio"], report.verdict.value]
        return _render_table(header, [row], "csv", payload)
    lines = [
        f"tau1 = {t1.si!r} s",
        f"tau2 = {t2.si!r} s",
        f"tau_dyn = {args.tau_dyn!r} s",
        f"tau_dec = {payload['tau_dec_s']!r} s",
        f"tau_dyn / tau_dec = {payload['timescale_ratio']!r}",
        f"coherent phase observed: {args.observed_coherence}",
        f"verdict: {report.verdict.value}",
        f"({regimes.THRESHOLD_NOTE})",
    ]
    return "\n".join(lines) + "\n"


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iondecoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=True):
        p.add_argument("--format", choices=("human", "csv", "json"), default="human")
        p.add_argument("--output", help="write here instead of stdout (atomic)")
        if data:
            p.add_argument("--data-file", help="salt data CSV overriding the bundled table")

    def thermal(p):
        p.add_argument("--temperature", type=float, default=core.DEFAULT_TEMPERATURE.si,
                       help="temperature in K (default 310)")
        p.add_argument("--ion-count", type=float, default=core.DEFAULT_ION_COUNT,
                       help="ions decohering together, N (default 1e23)")

    p = sub.add_parser("table", help="decoherence times for the salt table")
    p.add_argument("--salts", default="all", help='"all" or comma-separated names')
    thermal(p)
    common(p)
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("factor", help="two-point suppression factor")
    p.add_argument("--salt", help="derive wavelength and rate from this salt")
    p.add_argument("--wavelength", type=float, help="de Broglie wavelength in m")
    p.add_argument("--rate", type=float, help="scattering rate in 1/s")
    p.add_argument("--dx", type=float, required=True, help="separation in m")
    p.add_argument("--time", type=float, required=True, help="elapsed time in s")
    thermal(p)
    common(p)
    p.set_defaults(handler=_cmd_factor)

    p = sub.add_parser("sim", help="evolve a two-packet density matrix")
    p.add_argument("--salt", help="derive wavelength and rate from this salt")
    p.add_argument("--wavelength", type=float, help="de Broglie wavelength in m")
    p.add_argument("--rate", type=float, help="scattering rate in 1/s")
    p.add_argument("--separation", type=float, required=True, help="packet separation in m")
    p.add_argument("--width", type=float, required=True, help="packet width in m")
    p.add_argument("--t-total", type=float, required=True, help="total evolved time in s")
    p.add_argument("--steps", type=int, default=50, help="number of equal steps (default 50)")
    p.add_argument("--num-points", type=int, default=256, help="grid points (default 256)")
    p.add_argument("--extent-widths", type=float, default=40.0,
                   help="grid span in packet widths (default 40)")
    p.add_argument("--phase", type=float, default=0.0, help="relative phase in rad")
    thermal(p)
    common(p)
    p.set_defaults(handler=_cmd_sim)

    p = sub.add_parser("xray", help="implied density and spacing from an X-ray time")
    p.add_argument("--salt", required=True)
    p.add_argument("--tau-x", type=float, required=True, help="X-ray interaction time in s")
    thermal(p)
    common(p)
    p.set_defaults(handler=_cmd_xray)

    p = sub.add_parser("bcs", help="finite-mode vacuum overlap and its decay rate")
    p.add_argument("--modes", required=True, help="comma-separated mode counts")
    p.add_argument("--uniform-u", type=float, help="uniform U_k (otherwise pairing model)")
    p.add_argument("--gap", type=float, default=0.2, help="pairing gap (default 0.2)")
    p.add_argument("--half-bandwidth", type=float, default=1.0,
                   help="band energy half-width (default 1.0)")
    p.add_argument("--seed", type=int, default=0, help="band energy sampling seed (default 0)")
    common(p, data=False)
    p.set_defaults(handler=_cmd_bcs)

    p = sub.add_parser("classify", help="classical / QM / QFT regime verdict")
    p.add_argument("--salt", help="compute tau1 and tau2 from this salt")
    p.add_argument("--tau1", type=float, help="decoherence time tau1 in s")
    p.add_argument("--tau2", type=float, help="decoherence time tau2 in s")
    p.add_argument("--tau-dyn", type=float, required=True, help="dynamical timescale in s")
    p.add_argument("--observed-coherence", action="store_true",
                   help="a macroscopically coherent phase is observed")
    p.add_argument("--threshold", type=float, default=regimes.DEFAULT_THRESHOLD_RATIO,
                   help="ratio above which QM is inadequate (default 1e3)")
    thermal(p)
    common(p)
    p.set_defaults(handler=_cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _deliver(args.handler(args), args.output)
        return 0
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    except SaltDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IonDecohError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
