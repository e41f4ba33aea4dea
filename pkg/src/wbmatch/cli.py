"""Command-line front end.

Subcommands:
    adjust  apply a white balance mode to one image
    match   adjust query and template, locate the template, annotate
    eval    run a ground-truth dataset through every mode and report IoU
    synth   render a synthetic scene spec into image files

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 processing error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import imageio
from .color import WHITE_POINTS, srgb_encode
from .errors import ImageFormatError, WbMatchError
from .evaluation import Rect, evaluate_batch, iou
from .pipeline import MODES, RunConfig, adjust_query, run_match
from .scenegen import generate_scene, load_spec
from .whitebalance import WhitePointEstimator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PROCESSING = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=MODES, default="nwb",
                        help="adjustment applied to the query (default nwb)")
    parser.add_argument("--n", type=int, default=9,
                        help="number of blocks for mode nwb (default 9)")
    parser.add_argument("--estimator", choices=["whitepatch", "greyworld"],
                        default="whitepatch", help="source white point estimator")
    parser.add_argument("--weight-power", type=float, default=2.0,
                        help="inverse-distance weighting exponent (default 2)")
    parser.add_argument("--white-point", choices=sorted(WHITE_POINTS), default="d65",
                        help="ground-truth illuminant (default d65)")


def _config(args, mode: str | None = None) -> RunConfig:
    return RunConfig(
        mode=mode if mode is not None else args.mode,
        n=args.n,
        estimator=WhitePointEstimator.from_name(args.estimator),
        ground_truth=WHITE_POINTS[args.white_point],
        weight_power=args.weight_power,
    )


def _parse_rect(text: str) -> Rect:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected x,y,w,h but got {text!r}")
    x, y, w, h = (int(p) for p in parts)
    return Rect(x, y, w, h)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wbmatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_adj = sub.add_parser("adjust", help="white-balance one image")
    p_adj.add_argument("input")
    p_adj.add_argument("output")
    _add_config_flags(p_adj)

    p_match = sub.add_parser("match", help="locate a template in a query image")
    p_match.add_argument("query")
    p_match.add_argument("template")
    p_match.add_argument("annotated", help="path for the annotated adjusted query")
    p_match.add_argument("--gt", type=_parse_rect, default=None, metavar="X,Y,W,H",
                         help="ground-truth rect to draw in green")
    _add_config_flags(p_match)

    p_eval = sub.add_parser("eval", help="evaluate a ground-truth dataset")
    p_eval.add_argument("truth", help="JSON array of {query, template, rect}")
    p_eval.add_argument("--report", required=True, help="CSV report path")
    p_eval.add_argument("--modes", default="none,wb,nwb",
                        help="comma-separated adjustment modes to run")
    p_eval.add_argument("--no-figure", action="store_true",
                        help="skip the mean-IoU bar chart next to the report")
    _add_config_flags(p_eval)

    p_synth = sub.add_parser("synth", help="generate a synthetic scene")
    p_synth.add_argument("spec", help="scene spec JSON")
    p_synth.add_argument("outdir", help="directory for query.png/template.png/truth.json")
    return parser


def cmd_adjust(args) -> int:
    config = _config(args)
    image = imageio.read_image(args.input)
    adjusted = adjust_query(image, config)
    imageio.write_image(args.output, adjusted)
    return EXIT_OK


def cmd_match(args) -> int:
    config = _config(args)
    query = imageio.read_image(args.query)
    template = imageio.read_image(args.template)
    outcome, adjusted_query, _ = run_match(query, template, config)
    print(f"{outcome.x} {outcome.y} {outcome.score:.6f}")

    # Annotate on the encoded adjusted query: truth in green first, then
    # the detection in yellow on top.
    codes = srgb_encode(adjusted_query)
    if args.gt is not None:
        imageio.draw_rect_border(codes, args.gt, imageio.GREEN)
    detected = Rect(outcome.x, outcome.y, template.shape[1], template.shape[0])
    imageio.draw_rect_border(codes, detected, imageio.YELLOW)
    imageio.write_codes(args.annotated, codes)
    return EXIT_OK


def _load_truth(path: Path) -> list[dict]:
    try:
        entries = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise WbMatchError(f"ground-truth file is not valid JSON: {exc}") from exc
    if not isinstance(entries, list):
        raise WbMatchError("ground-truth file must contain a JSON array")
    return entries


def cmd_eval(args) -> int:
    truth_path = Path(args.truth)
    entries = _load_truth(truth_path)
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    for mode in modes:
        if mode not in MODES:
            raise WbMatchError(f"unknown mode {mode!r}")
    modes.sort(key=MODES.index)

    base = truth_path.parent
    resolved = []
    for entry in entries:
        try:
            qpath = base / entry["query"]
            tpath = base / entry["template"]
            rect = entry["rect"]
            truth_rect = Rect(int(rect["x"]), int(rect["y"]), int(rect["w"]), int(rect["h"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise WbMatchError(f"malformed ground-truth entry {entry!r}: {exc}") from exc
        for p in (qpath, tpath):
            if not p.exists():
                raise FileNotFoundError(f"referenced file does not exist: {p}")
        resolved.append((str(entry["query"]), qpath, tpath, truth_rect))

    lines = ["image,mode,x,y,score,iou"]
    records = []
    for image_id, qpath, tpath, truth_rect in resolved:
        query = imageio.read_image(qpath)
        template = imageio.read_image(tpath)
        for mode in modes:
            config = _config(args, mode=mode)
            outcome, _, _ = run_match(query, template, config)
            detected = Rect(outcome.x, outcome.y, template.shape[1], template.shape[0])
            records.append((image_id, detected, truth_rect, mode))
            lines.append(f"{image_id},{mode},{outcome.x},{outcome.y},"
                         f"{outcome.score:.6f},{iou(detected, truth_rect):.3f}")

    table = evaluate_batch(records)
    lines.append("# mean")
    for label, count, mean in table:
        lines.append(f"{label},{count},{mean:.3f}")
    report_path = Path(args.report)
    report_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    if not args.no_figure:
        from .report import save_mean_iou_figure
        save_mean_iou_figure(table, report_path.with_suffix(".png"))
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = load_spec(args.spec)
    bundle = generate_scene(spec)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    imageio.write_image(outdir / "query.png", bundle.query)
    imageio.write_image(outdir / "template.png", bundle.template)
    truth = {"x": bundle.rect.x, "y": bundle.rect.y, "w": bundle.rect.w, "h": bundle.rect.h}
    (outdir / "truth.json").write_text(json.dumps(truth, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


_COMMANDS = {
    "adjust": cmd_adjust,
    "match": cmd_match,
    "eval": cmd_eval,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (FileNotFoundError, IsADirectoryError, PermissionError, ImageFormatError) as exc:
        print(f"wbmatch: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (WbMatchError, ValueError) as exc:
        print(f"wbmatch: error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING


def run() -> None:
    sys.exit(main())
