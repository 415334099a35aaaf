"""
volume / mixed / measure サブコマンド
"""

import argparse

from src.cli.commands.common import expect, expect_count, load
from src.cli.services.io_schemas import measure_to_dict, polytope_to_dict
from src.cli.utils.cli_util import emit
from src.config.constants import EXIT_OK
from src.convex.core import arithmetic as ar
from src.convex.core.polytope import Polytope, volume
from src.convex.measures.mixed_volume import mixed_volume, mixed_volume_via_measure
from src.convex.measures.surface_measure import area_measure, centroid_defect, mixed_area_measure


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    volume_parser = subparsers.add_parser("volume", parents=[common], help="多面体の体積")
    volume_parser.add_argument("polytope", help="多面体または半空間系の JSON")
    volume_parser.set_defaults(handler=run_volume)

    mixed_parser = subparsers.add_parser("mixed", parents=[common], help="混合体積 V(K_1, ..., K_n)")
    mixed_parser.add_argument("polytopes", nargs="+", help="n 個の多面体 JSON（同じファイルの繰り返し可）")
    mixed_parser.add_argument(
        "--via-measure", action="store_true", dest="via_measure", help="混合面積測度による値も出力する"
    )
    mixed_parser.set_defaults(handler=run_mixed)

    measure_parser = subparsers.add_parser(
        "measure", parents=[common], help="表面積測度（n-1 個の多面体なら混合面積測度）"
    )
    measure_parser.add_argument("polytopes", nargs="+", help="1 個または n-1 個の多面体 JSON")
    measure_parser.set_defaults(handler=run_measure)


def run_volume(args: argparse.Namespace) -> int:
    [body] = expect(load(args, [args.polytope]), Polytope, [args.polytope])
    emit(
        {
            "dim": body.dim,
            "volume": ar.format_scalar(volume(body)),
            "vertices": len(body),
            "facets": len(body.facets) if body.is_full_dimensional else 0,
            "polytope": polytope_to_dict(body),
        },
        args.json_out,
    )
    return EXIT_OK


def run_mixed(args: argparse.Namespace) -> int:
    bodies = expect(load(args, args.polytopes), Polytope, args.polytopes)
    expect_count(bodies, bodies[0].dim, "mixed")
    payload = {"dim": bodies[0].dim, "mixed_volume": ar.format_scalar(mixed_volume(bodies))}
    if args.via_measure:
        payload["via_measure"] = ar.format_scalar(mixed_volume_via_measure(bodies[:-1], bodies[-1]))
    emit(payload, args.json_out)
    return EXIT_OK


def run_measure(args: argparse.Namespace) -> int:
    bodies = expect(load(args, args.polytopes), Polytope, args.polytopes)
    if len(bodies) == 1:
        measure = area_measure(bodies[0], allow_lower=True)
    else:
        expect_count(bodies, bodies[0].dim - 1, "measure")
        measure = mixed_area_measure(bodies)
    payload = measure_to_dict(measure)
    payload["centroid_defect"] = ar.format_vector(centroid_defect(measure))
    emit(payload, args.json_out)
    return EXIT_OK
