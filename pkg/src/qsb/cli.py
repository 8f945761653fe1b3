"""``qsb`` command line: decompose series, tabulate kernels, run the identity suite.

Exit codes: 0 success (or every identity passed), 1 an identity failed or a
numerical guard tripped, 2 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import cbergman as cb
from . import sbergman as sb
from .errors import IllConditioned, NearBoundary, ParseError, QSBError
from .holo import HoloSeries, c_anti_decompose, c_pair_decompose, classify
from .qalg import Frame
from .quad import build_ball_rule
from .serialize import (
    dumps_report,
    format_float,
    holo_to_json,
    load_series,
    parse_frame_spec,
    slice_to_json,
)
from .slicefn import extend_series, fourfold_decompose, is_intrinsic, restrict_Q
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# -- decompose -------------------------------------------------------------

def cmd_decompose(args) -> int:
    series = load_series(args.input)
    frame = parse_frame_spec(args.frame) if args.frame else None
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem

    if args.mode == "fourfold":
        F = extend_series(series) if isinstance(series, HoloSeries) else series
        frame = frame or (series.frame if isinstance(series, HoloSeries) else Frame.standard())
        parts = fourfold_decompose(F, frame)
        names = [f"{stem}.F{ell}.json" for ell in range(4)]
        payloads = [slice_to_json(p) for p in parts]
        label = is_intrinsic(F).value
    else:
        if isinstance(series, HoloSeries):
            f = series if frame is None else HoloSeries(frame, series.coeffs, series.radius)
        else:
            f = restrict_Q(series, frame or Frame.standard())
        f.complex_coeffs()  # NotSliceValued for H-valued input
        if args.mode == "c-pair":
            parts, tags = c_pair_decompose(f), ("f1", "f2")
        else:
            parts, tags = c_anti_decompose(f), ("fc", "fa")
        names = [f"{stem}.{t}.json" for t in tags]
        payloads = [holo_to_json(p) for p in parts]
        label = classify(f).value

    written = []
    for name, payload in zip(names, payloads):
        path = out_dir / name
        path.write_text(dumps_report(payload))
        written.append(str(path))
    sys.stdout.write(dumps_report({"mode": args.mode, "classification": label, "files": written}))
    return EXIT_OK


# -- kernel ----------------------------------------------------------------

def _parse_point(text: str) -> np.ndarray:
    """``x,y`` (a point of the slice ``C(e1)``) or ``w,x,y,z``."""
    try:
        v = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad point {text!r}") from exc
    if len(v) == 1:
        v = [v[0], 0.0]
    if len(v) == 2:
        return np.array([v[0], v[1], 0.0, 0.0])
    if len(v) == 4:
        return np.array(v)
    raise ParseError(f"point {text!r} needs 1, 2 or 4 components")


def _pairs(args, frame: Frame) -> tuple[np.ndarray, np.ndarray]:
    if args.pair:
        rows = []
        for spec in args.pair:
            left, sep, right = spec.partition(";")
            if not sep:
                raise ParseError(f"pair {spec!r} must look like 'q;r'")
            rows.append((_parse_point(left), _parse_point(right)))
        return np.array([a for a, _ in rows]), np.array([b for _, b in rows])
    n = args.grid
    if n is None or n < 1:
        raise ParseError("give --pair or --grid n")
    t = np.linspace(-args.radius, args.radius, n) if n > 1 else np.zeros(1)
    z = (t[:, None] + 1j * t[None, :]).ravel()
    z = z[np.abs(z) <= args.radius + 1e-15]
    # every ordered pair of grid points, in the slice of the frame
    pts = frame.embed(z)
    a = np.repeat(pts, len(z), axis=0)
    b = np.tile(pts, (len(z), 1))
    return a, b


def _complex_of(p: np.ndarray, frame: Frame) -> np.ndarray:
    c = frame.coords(p)
    if np.abs(c[..., 2:]).max(initial=0.0) > 1e-12:
        raise ParseError("complex kernel points must lie in the frame's slice")
    return c[..., 0] + 1j * c[..., 1]


def _first_kind_model(args) -> sb.FirstKindKernel:
    if args.gram:
        try:
            return sb.FirstKindKernel.from_json(json.loads(Path(args.gram).read_text()))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise ParseError(f"cannot read Gram file {args.gram}: {exc}") from exc
    N = 2 if args.truncation is None else args.truncation
    D = 2 * N
    return sb.gram_build(N, build_ball_rule(max(4, (D + 5) // 2), D + 3 + (D + 3) % 2))


def _kernel_table(args) -> tuple[list[str], list[list[float]]]:
    frame = parse_frame_spec(args.frame)
    q, r = _pairs(args, frame)
    if args.kind == "complex":
        z, w = _complex_of(q, frame), _complex_of(r, frame)
        if args.truncation is None:
            K = cb.disk_kernel_eval(z, w)
        else:
            K = cb.disk_kernel_series(z, w, args.truncation)
        head = ["z_re", "z_im", "zeta_re", "zeta_im", "K_re", "K_im"]
        cols = [z.real, z.imag, w.real, w.imag, np.real(K), np.imag(K)]
        if args.components:
            if args.truncation is None:
                R, I = cb.kernel_RI_split(z, w)
            else:
                R, I = cb.kernel_RI_truncated(z, w, args.truncation)
            head += ["R_re", "R_im", "I_re", "I_im"]
            cols += [np.real(R), np.imag(R), np.real(I), np.imag(I)]
        return head, np.column_stack(cols).tolist()

    head = [f"{p}_{c}" for p in ("q", "r", "K") for c in "wxyz"]
    if args.kind == "second":
        N = sb.MIN_SECOND_KIND_N if args.truncation is None else args.truncation
        K = sb.second_kind_eval(q, r, N)
    else:
        kernel = _first_kind_model(args)
        if args.save_gram:
            Path(args.save_gram).write_text(dumps_report(kernel.to_json()))
        K = sb.first_kind_eval(kernel, q, r)
    cols = [q, r, K]
    if args.components:
        if args.kind != "second":
            raise ParseError("--components applies to the second-kind and complex kernels")
        parts = sb.second_kind_components(q, r, frame, N)
        head += [f"K{ell}_{c}" for ell in range(4) for c in "wxyz"]
        cols += list(parts)
    return head, np.hstack(cols).tolist()


def cmd_kernel(args) -> int:
    head, rows = _kernel_table(args)
    if args.format == "json":
        text = dumps_report({"kind": args.kind, "columns": head, "rows": rows})
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        for row in rows:
            w.writerow([format_float(v) for v in row])
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.degree, args.tol, args.seed, args.mismatch, timing=args.timing)
    text = dumps_report(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["pass"] else EXIT_FAIL


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="C-property or fourfold intrinsic decomposition")
    d.add_argument("--input", required=True, help="series JSON file")
    d.add_argument("--frame", help="'i=e1' or 'i=x,y,z' (defaults to the file's frame or e1)")
    d.add_argument("--mode", choices=("c-pair", "c-anti", "fourfold"), default="fourfold")
    d.add_argument("--out", default=".", help="output directory")
    d.set_defaults(func=cmd_decompose)

    k = sub.add_parser("kernel", help="tabulate a kernel on point pairs")
    k.add_argument("--kind", choices=("second", "first", "complex"), required=True)
    k.add_argument("--pair", action="append", help="'q;r' with points 'x,y' or 'w,x,y,z' (repeatable)")
    k.add_argument("--grid", type=int, help="n x n grid in the slice; all ordered pairs")
    k.add_argument("--radius", type=float, default=0.5, help="grid half-width")
    k.add_argument("--frame", default="i=e1")
    k.add_argument("--truncation", type=int, help="series degree / Gram size N")
    k.add_argument("--components", action="store_true", help="add R/I or K0..K3 columns")
    k.add_argument("--gram", help="prebuilt first-kind kernel JSON")
    k.add_argument("--save-gram", help="write the first-kind kernel JSON here")
    k.add_argument("--format", choices=("csv", "json"), default="csv")
    k.add_argument("--out")
    k.set_defaults(func=cmd_kernel)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--degree", type=int, default=5)
    v.add_argument("--tol", type=float, help="override every per-identity tolerance")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mismatch", action="store_true", help="negative control: mismatched kernel truncation")
    v.add_argument("--timing", action="store_true", help="include wall_time in the report")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NearBoundary, IllConditioned) as exc:
        print(f"qsb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (QSBError, ValueError) as exc:
        print(f"qsb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
