"""Command-line frontend.

Subcommands: ``audit`` (continuity metrics), ``roundtrip`` (decoding
completeness), ``iou-check`` (closed-form score matrix vs polygon oracle),
``convert`` (DOTA annotations to codec encodings), ``curves`` (encoding
sweeps).  Exit codes: 0 success, 1 failed verdict, 2 usage or parse errors.

A plain ``key=value`` config file may supply any long-flag default; explicit
flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from cobb import audit as audit_mod
from cobb import codec as codec_mod
from cobb import curves as curves_mod
from cobb import dota as dota_mod
from cobb.baselines import available_codecs, get_codec
from cobb.errors import CobbError
from cobb.geometry import HorizontalBox, OrientedBox, iou

FLOAT_FMT = "%.17g"


def _fmt(v) -> str:
    return FLOAT_FMT % float(v)


# ---------------------------------------------------------------------------
# Report serialization (schema documented in the README)


def _witness_json(w):
    return w if w is not None else None


def report_to_obj(report: audit_mod.MetricReport) -> dict:
    return {
        "codec": report.codec,
        "seed": report.seed,
        "norm": "linf",
        "metrics": [
            {
                "name": m.name,
                "steps": [{"delta": s.delta, "gap": s.gap} for s in m.steps],
                "verdict": m.verdict,
                "witness": _witness_json(m.witness),
            }
            for m in report.metrics
        ],
        "extras": report.extras,
    }


def reports_to_json(reports) -> str:
    return json.dumps([report_to_obj(r) for r in reports], indent=2, sort_keys=False) + "\n"


def reports_to_csv(reports) -> str:
    lines = ["codec,metric,delta,gap,verdict,witness"]
    for r in reports:
        for m in r.metrics:
            for s in m.steps:
                witness = json.dumps(m.witness, sort_keys=True) if m.witness else ""
                witness = witness.replace('"', "'")
                lines.append(
                    f'{r.codec},{m.name},{_fmt(s.delta)},{_fmt(s.gap)},{m.verdict},"{witness}"'
                )
    return "\n".join(lines) + "\n"


def _write_out(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Config file handling


def _load_config(path) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CobbError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


_CONFIG_CASTS = {
    "seed": int,
    "samples": int,
    "directions": int,
    "grid_points": int,
    "bins": int,
    "steps": lambda s: s,
    "codec": lambda s: s,
    "format": lambda s: s,
    "out": lambda s: s,
    "sweep": lambda s: s,
    "box": lambda s: s,
    "perturbation": float,
}


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.partition("=")[2]
    if path is None:
        return
    raw = _load_config(path)
    defaults = {}
    for key, value in raw.items():
        cast = _CONFIG_CASTS.get(key)
        if cast is None:
            raise CobbError(f"unknown config key {key!r}")
        defaults[key] = cast(value)
    # subparsers parse into a fresh namespace, so defaults must land on them
    for action in parser._subparsers._group_actions[0].choices.values():
        known = {k: v for k, v in defaults.items() if any(a.dest == k for a in action._actions)}
        action.set_defaults(**known)


def _parse_steps(text: str) -> tuple[float, ...]:
    try:
        steps = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise CobbError(f"bad --steps value {text!r}") from None
    return steps


def _parse_box(text: str) -> OrientedBox:
    parts = text.split(",")
    if len(parts) != 5:
        raise CobbError(f"--box needs cx,cy,w,h,theta, got {text!r}")
    try:
        cx, cy, w, h, t = (float(p) for p in parts)
    except ValueError:
        raise CobbError(f"non-numeric --box value in {text!r}") from None
    return OrientedBox(cx, cy, w, h, t)


def _codec_list(name: str) -> list[str]:
    if name == "all":
        return list(available_codecs())
    if name in available_codecs():
        return [name]
    raise CobbError(f"unknown codec {name!r}; available: all, {', '.join(available_codecs())}")


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_audit(args) -> int:
    cfg = audit_mod.ProbeConfig(
        steps=_parse_steps(args.steps),
        samples=args.samples,
        seed=args.seed,
        perturbation=args.perturbation,
        directions=args.directions,
    )
    codecs = [get_codec(n) for n in _codec_list(args.codec)]
    reports = audit_mod.run_audit(codecs, cfg)
    text = reports_to_json(reports) if args.format == "json" else reports_to_csv(reports)
    _write_out(text, args.out)
    failures = 0
    for rep in reports:
        for m in rep.metrics:
            line = f"{rep.codec:9s} {m.name:24s} {m.verdict}  worst_gap={_fmt(max(s.gap for s in m.steps))}"
            print(line, file=sys.stderr)
            failures += m.verdict == "fail"
    return 1 if failures else 0


def _cmd_roundtrip(args) -> int:
    cfg = audit_mod.ProbeConfig(steps=_parse_steps(args.steps), samples=args.samples, seed=args.seed)
    status = 0
    for name in _codec_list(args.codec):
        codec = get_codec(name)
        res = audit_mod.check_decoding_completeness(codec, cfg)
        print(f"{name}: worst 1-IoU = {_fmt(res.steps[0].gap)} [{res.verdict}]")
        status |= res.verdict == "fail"
    return status


def _cmd_iou_check(args) -> int:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([args.seed, 7])))
    worst = 0.0
    for _ in range(args.samples):
        w = float(np.exp(rng.uniform(math.log(0.2), math.log(5.0))))
        h = float(np.exp(rng.uniform(math.log(0.2), math.log(5.0))))
        rs = float(rng.uniform(1e-7, 0.5))
        cands = codec_mod.four_candidates(HorizontalBox(0.0, 0.0, w, h), rs)
        m = codec_mod.iou_matrix(w, h, rs)
        for i in range(4):
            for j in range(i + 1, 4):
                worst = max(worst, abs(m[i][j] - iou(cands.quads[i], cands.quads[j])))
    print(f"max |closed-form - oracle| over {args.samples} samples: {_fmt(worst)}")
    return 0 if worst <= 1e-7 else 1


def _cmd_convert(args) -> int:
    import logging

    codec = get_codec(args.codec)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("skipped: %(message)s"))
    dota_mod.log.addHandler(handler)
    try:
        n = dota_mod.convert_annotations(args.input, codec, args.out, float_fmt=FLOAT_FMT)
    finally:
        dota_mod.log.removeHandler(handler)
    print(f"wrote {n} encodings to {args.out}")
    return 0


def _cmd_curves(args) -> int:
    codec = get_codec(args.codec)
    box = _parse_box(args.box)
    n = curves_mod.emit_curves(codec, args.sweep, box, args.out, grid_points=args.grid_points)
    print(f"wrote {n} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cobb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_default):
        p.add_argument("--codec", default="all")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--steps", default="1e-3,1e-4,1e-5")
        p.add_argument("--config", default=None, help="key=value defaults file")

    p = sub.add_parser("audit", help="run the six continuity metrics")
    common(p, 64)
    p.add_argument("--perturbation", type=float, default=1e-4)
    p.add_argument("--directions", type=int, default=16)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("roundtrip", help="decoding completeness check")
    common(p, 256)
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("iou-check", help="closed-form score matrix vs polygon oracle")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_iou_check)

    p = sub.add_parser("convert", help="DOTA annotations to codec encodings")
    p.add_argument("input")
    p.add_argument("--codec", default="cobb")
    p.add_argument("--out", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("curves", help="encoding-component sweep CSV")
    p.add_argument("--codec", default="cobb")
    p.add_argument("--sweep", choices=("rotation", "aspect"), default="rotation")
    p.add_argument("--box", default="0,0,4,2,0")
    p.add_argument("--grid-points", type=int, dest="grid_points", default=1440)
    p.add_argument("--out", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_curves)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    except (CobbError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CobbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
