# alkkit/cli.py
"""
Command-line frontend for alk-kit.

Every command prints one canonical JSON document on stdout and writes a run
manifest. Exit codes: 0 ok, 1 corpus mismatch, 2 input error, 3 genericity rejection.
"""
from __future__ import annotations
import argparse, sys
from pathlib import Path
from typing import List, Optional, Tuple

from . import __version__
from .bordism import BClass, epsilon
from .config import CONVENTION_VERSION, LOG_LEVEL
from .errors import AlkError, GenericityError, InputError
from .formats import read_loop, read_movie, read_point_movie, read_user_preset
from .goldman import goldman_bracket
from .linkflow import alk, delta_alk, events_to_list
from .manifest import RunManifest
from .obstruct import disjointable_necessary, passages
from .presets import indet_preset
from .sweep import detect_crossings
from .utils import as_fraction, canonical_json, logger, setup_logging
from .words import Elem3, Word, conjugacy_canonical

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_GENERICITY = 0, 1, 2, 3


def _resolve_preset(args, doc: dict, genus: int):
    if args.preset_file:
        return read_user_preset(args.preset_file)
    name = args.preset or doc.get("preset")
    if not name:
        raise AlkError("no preset given (use --preset or a 'preset' field in the movie)")
    one_sided = args.one_sided or doc.get("one_sided", False)
    return indet_preset(name, one_sided=one_sided, genus=genus)


def _prepared(args, movie):
    """Staggered movie, jittered first when --jitter is given."""
    if args.jitter is None:
        return movie.staggered()
    try:
        bound = as_fraction(args.jitter)
    except ValueError as e:
        raise InputError("--jitter", str(e))
    return movie.jittered(bound, seed=args.seed)


def cmd_bracket(args, manifest: RunManifest) -> dict:
    l1, l2 = read_loop(args.l1), read_loop(args.l2)
    if args.genus is not None and (l1.genus != args.genus or l2.genus != args.genus):
        raise AlkError(f"loops are not on the genus-{args.genus} surface")
    manifest.add_inputs([args.l1, args.l2])
    return goldman_bracket(l1, l2).as_dict()


def cmd_delta(args, manifest: RunManifest) -> dict:
    movie, _ = read_movie(args.movie)
    manifest.add_inputs([args.movie])
    value = delta_alk(_prepared(args, movie), workers=args.workers)
    return {"delta": value.as_list(), "epsilon": epsilon(value)}


def cmd_alk(args, manifest: RunManifest) -> dict:
    movie, doc = read_movie(args.movie)
    manifest.add_inputs([args.movie] + ([args.preset_file] if args.preset_file else []))
    preset = _resolve_preset(args, doc, movie.genus)
    manifest.preset = preset.name
    staged = _prepared(args, movie)
    value = alk((staged.end.l1, staged.end.l2), (staged.start.l1, staged.start.l2), staged, preset,
                workers=args.workers)
    out = value.as_dict()
    out["indet"] = preset.as_dict()
    return out


def cmd_crossings(args, manifest: RunManifest) -> dict:
    movie, _ = read_movie(args.movie)
    manifest.add_inputs([args.movie])
    staged = _prepared(args, movie)
    events = detect_crossings(staged, workers=args.workers)
    if args.svg:
        from .diagrams import render_frame
        try:
            t = as_fraction(args.time) if args.time is not None else None
        except ValueError as e:
            raise InputError("--time", str(e))
        render_frame(staged, events, args.svg, t)
        manifest.add_output("svg", Path(args.svg).read_bytes())
    return {"events": events_to_list(events)}


def cmd_mu00(args, manifest: RunManifest) -> dict:
    l1, l2 = read_loop(args.l1), read_loop(args.l2)
    manifest.add_inputs([args.l1, args.l2])
    verdict = disjointable_necessary(l1, l2)
    out = verdict.as_dict()
    out["epsilon"] = epsilon(verdict.mu00)
    return out


def cmd_wind(args, manifest: RunManifest) -> dict:
    movie = read_point_movie(args.movie)
    manifest.add_inputs([args.movie])
    signs = passages(movie)
    return {"winding": sum(signs), "passages": signs}


def cmd_conj_canon(args, manifest: RunManifest) -> dict:
    word = Word.parse(args.word, args.genus)
    return {"genus": args.genus, "word": args.word, "class": str(conjugacy_canonical(word))}


def cmd_bclass(args, manifest: RunManifest) -> dict:
    cls = BClass.of(Elem3.parse(args.first, args.genus), Elem3.parse(args.second, args.genus))
    return {"genus": args.genus, "class": str(cls), **cls.as_dict()}


def cmd_corpus_verify(args, manifest: RunManifest) -> dict:
    from .corpus import verify_corpus
    report = verify_corpus(args.corpus, workers=args.workers)
    manifest.add_inputs(report.pop("files", []))
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alk-kit", description="alk-kit – exact surface loop and link invariants")
    p.add_argument("--version", action="version", version=f"alk-kit {__version__} ({CONVENTION_VERSION})")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    p.add_argument("--json-logs", action="store_true", help="log JSON lines on stderr")
    p.add_argument("--no-manifest", action="store_true", help="do not write a run manifest")
    p.add_argument("--manifest-dir", default=None, help="manifest directory (default ALK_MANIFEST_DIR)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("bracket", help="Goldman bracket of two loops")
    s.add_argument("--genus", type=int, default=None)
    s.add_argument("l1")
    s.add_argument("l2")
    s.set_defaults(func=cmd_bracket)

    for name, func, text in (("alk", cmd_alk, "affine linking invariant along a movie"),
                             ("delta", cmd_delta, "signed crossing sum of a movie"),
                             ("crossings", cmd_crossings, "crossing events of a movie")):
        s = sub.add_parser(name, help=text)
        s.add_argument("movie")
        s.add_argument("-w", "--workers", type=int, default=1, help="parallel threads over keyframe intervals")
        s.add_argument("--jitter", default=None, help="move interior keyframes by less than this rational, e.g. 1/100")
        s.add_argument("--seed", type=int, default=0, help="seed for --jitter")
        if name == "alk":
            s.add_argument("--preset", default=None, help="indeterminacy preset name")
            s.add_argument("--preset-file", default=None, help="user preset JSON")
            s.add_argument("--one-sided", action="store_true", help="hold the second component fixed")
        if name == "crossings":
            s.add_argument("--svg", default=None, help="write a diagram of one frame")
            s.add_argument("--time", default=None, help="frame time for the diagram, e.g. 1/2")
        s.set_defaults(func=func)

    s = sub.add_parser("mu00", help="disjunction obstruction of two loops")
    s.add_argument("l1")
    s.add_argument("l2")
    s.set_defaults(func=cmd_mu00)

    s = sub.add_parser("wind", help="affine winding number of a point movie")
    s.add_argument("movie")
    s.set_defaults(func=cmd_wind)

    s = sub.add_parser("conj-canon", help="canonical conjugacy representative")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("word", help='e.g. "b1 a1 B1"')
    s.set_defaults(func=cmd_conj_canon)

    s = sub.add_parser("bclass", help="canonical point class of a based pair")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("first", help='e.g. "a1 b2 ; 0"')
    s.add_argument("second")
    s.set_defaults(func=cmd_bclass)

    s = sub.add_parser("corpus-verify", help="replay the example corpus")
    s.add_argument("--corpus", default=None, help="corpus directory (default ALK_CORPUS_DIR)")
    s.add_argument("-w", "--workers", type=int, default=None)
    s.set_defaults(func=cmd_corpus_verify)
    return p


def execute(argv: List[str], write_manifest: bool = True) -> Tuple[int, str]:
    """Run one command; returns (exit code, stdout text). Never raises for domain errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = RunManifest(args.command, list(argv))
    try:
        doc = args.func(args, manifest)
        code = EXIT_OK
        if args.command == "corpus-verify" and not doc.get("ok", False):
            code = EXIT_MISMATCH
    except GenericityError as e:
        logger.warning("Genericity rejection: %s", e)
        doc, code = e.as_dict(), EXIT_GENERICITY
    except AlkError as e:
        logger.error("Input error: %s", e)
        doc = e.as_dict()
        code = EXIT_INPUT
    text = canonical_json(doc)
    manifest.add_output("stdout", text.encode("utf-8"))
    if write_manifest and not args.no_manifest:
        manifest.write(Path(args.manifest_dir) if args.manifest_dir else None)
    return code, text


def main(argv: Optional[List[str]] = None):
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("-v", "--verbose", action="count", default=0)
    pre.add_argument("--json-logs", action="store_true")
    known, _ = pre.parse_known_args(argv)
    if known.verbose or known.json_logs:
        level = "DEBUG" if known.verbose > 1 else "INFO" if known.verbose else LOG_LEVEL
        setup_logging(level=level, json_mode=known.json_logs or None, reinitialize=True)
    code, text = execute(argv)
    sys.stdout.write(text)
    sys.exit(code)


if __name__ == "__main__":
    main()
