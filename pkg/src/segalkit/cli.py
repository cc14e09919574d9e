"""Command-line front end.

Verbs: build (delta, boundary, upsilon, theta, boit, attach, jpre, ibar,
nerve), check (segal, groupoid, proto-groupoid, free-ordered,
equivalence), compute (tau1, tau0, homotopy, diagonal, homology, pi0,
pi1), plan (run, rationalize, check-rational), hom (count), validate.

Exit codes: 0 for a completed computation (including negative verdicts),
2 for an Unknown or unsaturated outcome, 1 for structural errors.
Reports are JSON on stdout unless --summary is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as kit_io
from .config import default_budget
from .errors import BudgetError, SegalkitError, StructureError
from .homology import homology
from .oracle import Verdict, we_oracle
from .pi1 import is_trivially_simplifiable, pi1_presentation
from .precat import (diagonal, is_connected, is_free_ordered,
                     is_segal_category, precat_product)
from .sset import boundary, pi0, standard_simplex
from .theta import (attach, boit, generating_families, theta, upsilon,
                    spine_inclusion)
from .trunc import (build_ibar, build_jpre, homotopy_groups,
                    is_equivalence_of_segal_categories, is_groupoid,
                    is_proto_groupoid, nerve, poset_chain, tau0, tau1,
                    cyclic_group_category, walking_isomorphism)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


def _emit(args, report, exit_code):
    if getattr(args, "summary", False):
        for key, value in sorted(report.items()):
            if key == "command":
                continue
            print("%s: %s" % (key, value))
    else:
        print(kit_io.dumps(report), end="")
    return exit_code


def _read_precat(path):
    return kit_io.precat_from_json(kit_io.read_file(path), name=path)


def _read_sset(path):
    return kit_io.sset_from_json(kit_io.read_file(path), name=path)


def _profile_json(prof):
    return [{"free_rank": fr, "torsion": list(tors)}
            for fr, tors in prof.groups]


def _homology_crosscheck(X, max_degree):
    """Witness re-validation: recompute with a different pivot order."""
    a = homology(X, max_degree=max_degree, pivot="min")
    b = homology(X, max_degree=max_degree, pivot="first")
    if a != b:
        raise StructureError("homology cross-check failed")
    return a


def cmd_build(args):
    out = {"command": "build %s" % args.what}
    if args.what == "delta":
        data = kit_io.sset_to_json(standard_simplex(args.n))
    elif args.what == "boundary":
        data = kit_io.sset_to_json(boundary(args.n))
    elif args.what == "upsilon":
        data = kit_io.sset_to_json(upsilon(args.n))
    elif args.what == "theta":
        X = _read_sset(args.shape)
        Y = _read_sset(args.fill)
        data = kit_io.precat_to_json(theta(X, Y))
    elif args.what == "boit":
        g = kit_io.ssetmap_from_json(kit_io.read_file(args.map))
        data = kit_io.precatmap_to_json(boit(args.m, g).map)
    elif args.what == "attach":
        g = kit_io.ssetmap_from_json(kit_io.read_file(args.map))
        data = kit_io.precatmap_to_json(attach(args.n, g).map)
    elif args.what == "jpre":
        data = kit_io.precat_to_json(build_jpre(args.interval_dim))
        out["interval_dim"] = args.interval_dim
    elif args.what == "ibar":
        data = kit_io.precat_to_json(build_ibar(args.interval_dim))
        out["trunc_dim"] = args.interval_dim
    elif args.what == "nerve":
        if args.category == "poset":
            C = poset_chain(args.n)
        elif args.category == "cyclic":
            C = cyclic_group_category(args.n)
        elif args.category == "walking-iso":
            C = walking_isomorphism()
        else:
            raise StructureError("unknown category kind")
        data = kit_io.precat_to_json(nerve(C, args.trunc))
    else:
        raise StructureError("unknown build target")
    if args.output:
        kit_io.write_file(args.output, data)
        out["written"] = args.output
        print(kit_io.dumps(out), end="")
    else:
        print(kit_io.dumps(data), end="")
    return EXIT_OK


def cmd_check(args):
    A = _read_precat(args.object)
    report = {"command": "check %s" % args.what, "budget": default_budget()}
    if args.what == "segal":
        ok, verdicts = is_segal_category(A, args.max_level)
        report["verdicts"] = {"%d@%s" % (m, ",".join(t)): v.value
                              for (m, t), v in sorted(verdicts.items())}
        report["segal"] = ok
        if ok is None:
            return _emit(args, report, EXIT_UNDECIDED)
        return _emit(args, report, EXIT_OK)
    if args.what == "connected":
        report["connected"] = is_connected(A)
        return _emit(args, report, EXIT_OK)
    if args.what == "groupoid":
        report["groupoid"] = is_groupoid(A, args.max_level)
        return _emit(args, report, EXIT_OK)
    if args.what == "proto-groupoid":
        rep = is_proto_groupoid(A, interval_dim=args.interval_dim)
        report["proto_groupoid"] = rep.holds
        report["witnessed"] = sorted(u for u, w in rep.witnesses.items()
                                     if w is not None)
        report["failing"] = sorted(u for u, w in rep.witnesses.items()
                                   if w is None)
        report["undecided"] = rep.undecided
        # every emitted witness re-validates against its claim
        for u, w in rep.witnesses.items():
            if w is not None and not w.check(A, None):
                raise StructureError("witness failed re-validation")
        code = EXIT_UNDECIDED if rep.undecided else EXIT_OK
        return _emit(args, report, code)
    if args.what == "free-ordered":
        order = args.order.split(",") if args.order else A.objects()
        rep = is_free_ordered(A, order, strict=args.strict,
                              max_level=args.max_level)
        report["free_ordered"] = rep.holds
        report["undecided"] = rep.undecided
        report["failures"] = [str(f) for f in rep.failures]
        code = EXIT_UNDECIDED if rep.undecided else EXIT_OK
        return _emit(args, report, code)
    if args.what == "equivalence":
        f = kit_io.precatmap_from_json(kit_io.read_file(args.map))
        rep = is_equivalence_of_segal_categories(f, args.max_level)
        report["verdict"] = rep.verdict.value
        report["essentially_surjective"] = rep.essentially_surjective
        report["hom_verdicts"] = {"%s,%s" % k: v.value
                                  for k, v in sorted(rep.hom_verdicts.items())}
        code = (EXIT_UNDECIDED if rep.verdict is Verdict.UNKNOWN else EXIT_OK)
        return _emit(args, report, code)
    raise StructureError("unknown check")


def cmd_compute(args):
    report = {"command": "compute %s" % args.what}
    if args.what in ("tau1", "tau0", "homotopy", "diagonal"):
        A = _read_precat(args.object)
    if args.what == "tau1":
        C = tau1(A, args.max_level)
        report["objects"] = C.objects
        report["morphisms"] = {f: list(C.morphisms[f])
                               for f in sorted(C.morphisms)}
        report["identities"] = C.identity
        report["composition"] = {"%s*%s" % (g, f): h
                                 for (g, f), h in sorted(C.comp.items())}
        return _emit(args, report, EXIT_OK)
    if args.what == "tau0":
        report["classes"] = [list(c) for c in tau0(A, args.max_level)]
        return _emit(args, report, EXIT_OK)
    if args.what == "homotopy":
        hg = homotopy_groups(A, args.max_level)
        report["pi0"] = hg.pi0_count
        report["per_object"] = {
            a: {"pi1_count": d["pi1_count"],
                "loop_group_trivial": d["loop_group_trivial"],
                "loops_homology": _profile_json(d["loops_homology"])}
            for a, d in hg.per_object.items()}
        report["simply_connected"] = hg.simply_connected
        return _emit(args, report, EXIT_OK)
    if args.what == "diagonal":
        D = diagonal(A, max_dim=args.max_dim)
        report["gen_counts"] = list(D.gen_counts())
        if args.homology:
            cap = args.max_dim - 1 if args.max_dim is not None else None
            prof = _homology_crosscheck(D, cap)
            report["homology"] = _profile_json(prof)
            if args.max_dim is not None:
                report["homology_valid_below"] = args.max_dim
        if args.output:
            kit_io.write_file(args.output, kit_io.sset_to_json(D))
            report["written"] = args.output
        return _emit(args, report, EXIT_OK)
    if args.what == "homology":
        X = _read_sset(args.object)
        prof = _homology_crosscheck(X, args.max_degree)
        report["homology"] = _profile_json(prof)
        return _emit(args, report, EXIT_OK)
    if args.what == "pi0":
        X = _read_sset(args.object)
        parts = pi0(X)
        report["classes"] = [list(c) for c in parts]
        # the partition must exhaust the vertices
        if sorted(v for c in parts for v in c) != X.gens_of_dim(0):
            raise StructureError("partition does not exhaust the vertices")
        return _emit(args, report, EXIT_OK)
    if args.what == "pi1":
        X = _read_sset(args.object)
        pres = pi1_presentation(X, basepoint=args.basepoint)
        report["generators"] = pres.generator_count
        report["relators"] = [list(r) for r in pres.relators]
        report["trivially_simplifiable"] = is_trivially_simplifiable(pres)
        return _emit(args, report, EXIT_OK)
    raise StructureError("unknown computation")


def _arrows_from_spec(specs):
    from .sset import simplex_inclusion
    from .theta import object_inclusion
    arrows = []
    for spec in specs:
        if spec["type"] == "boit":
            a = boit(spec["m"], simplex_inclusion(spec["k"]))
            a.params["k"] = spec["k"]
            a.arrow_id = "boit(m=%d,k=%d)" % (spec["m"], spec["k"])
        elif spec["type"] == "attach":
            a = attach(spec["n"], simplex_inclusion(spec["k"]))
            a.params["k"] = spec["k"]
            a.arrow_id = "attach(n=%d,k=%d)" % (spec["n"], spec["k"])
        elif spec["type"] == "obj":
            from .theta import object_inclusion
            a = object_inclusion()
        else:
            raise StructureError("unknown arrow type %s" % spec["type"])
        arrows.append(a)
    return arrows


def cmd_plan(args):
    from .plan import (LiftingDiagram, Plan, SimpleStep, e_phi_marked,
                       enumerate_diagrams, is_rational, rationalize)
    from .precat import PrecatMap
    report = {"command": "plan %s" % args.what}
    X = _read_precat(args.object)
    if args.what == "run":
        steps_data = kit_io.plan_from_json(kit_io.read_file(args.plan)) \
            if args.plan else None
        if steps_data is None:
            arrows = _arrows_from_spec(
                [{"type": "boit", "m": m, "k": k}
                 for m in range(2, args.max_m + 1)
                 for k in range(args.max_k + 1)])
            marked, can, plan, rep = e_phi_marked(
                X, arrows, step_budget=args.steps, dim_bound=args.max_dim)
            report["stage_sizes"] = rep.stage_sizes
            report["saturated"] = rep.saturated
            report["unfilled"] = len(rep.unfilled)
            report["marks"] = len(marked.marking)
            if args.output:
                kit_io.write_file(args.output,
                                  kit_io.precat_to_json(marked.precat))
                report["written"] = args.output
            code = EXIT_OK if rep.saturated else EXIT_UNDECIDED
            return _emit(args, report, code)
        plan = Plan(X)
        for step_data in steps_data[:args.steps]:
            pairs = []
            for entry in step_data:
                arrows = _arrows_from_spec([entry["arrow"]])
                arrow = arrows[0]
                assign = {g: kit_io.biel_from_json(e)
                          for g, e in entry["attach"].items()}
                att = PrecatMap(arrow.source, plan.result, assign)
                pairs.append((LiftingDiagram(arrow, att),
                              entry.get("mult", 1)))
            plan.push(SimpleStep(pairs))
        report["stage_sizes"] = [len(s.gens) for s in plan.stages]
        if args.output:
            kit_io.write_file(args.output,
                              kit_io.precat_to_json(plan.result))
            report["written"] = args.output
        return _emit(args, report, EXIT_OK)
    if args.what in ("rationalize", "check-rational"):
        arrows = _arrows_from_spec(
            [{"type": "boit", "m": m, "k": k}
             for m in range(2, args.max_m + 1)
             for k in range(args.max_k + 1)])
        plan = Plan(X)
        for _ in range(args.steps):
            diags = enumerate_diagrams(plan.result, arrows,
                                       dim_bound=args.max_dim)
            if not diags:
                break
            plan.push(SimpleStep([(d, 1) for d in diags]))
        if args.what == "check-rational":
            report["rational"] = is_rational(plan)
            return _emit(args, report, EXIT_OK)
        rat = rationalize(plan)
        report["rational"] = is_rational(rat.plan)
        report["witness_is_iso"] = rat.witness.is_iso()
        report["stage_sizes"] = [len(s.gens) for s in rat.plan.stages]
        return _emit(args, report, EXIT_OK)
    raise StructureError("unknown plan command")


def cmd_hom(args):
    from .theta import hom_transposition_check, spine_transposition_count
    A = _read_precat(args.object)
    C = _read_sset(args.fill)
    report = {"command": "hom count"}
    if args.spine:
        direct, total = spine_transposition_count(args.m, C, A)
    else:
        direct, total = hom_transposition_check(args.m, C, A)
    report["direct"] = direct
    report["transposed"] = total
    return _emit(args, report, EXIT_OK)


def cmd_validate(args):
    report = {"command": "validate"}
    data = kit_io.read_file(args.file)
    kind = data.get("kind")
    try:
        if kind == "sset":
            kit_io.sset_from_json(data)
        elif kind == "ssetmap":
            kit_io.ssetmap_from_json(data)
        elif kind == "precat":
            kit_io.precat_from_json(data)
        elif kind == "precatmap":
            kit_io.precatmap_from_json(data)
        elif kind == "plan":
            kit_io.plan_from_json(data)
        else:
            raise StructureError("unknown file kind %r" % kind)
    except StructureError as exc:
        report["valid"] = False
        report["violations"] = str(exc).split("; ")
        print(kit_io.dumps(report), end="")
        return EXIT_ERROR
    report["valid"] = True
    report["kind"] = kind
    print(kit_io.dumps(report), end="")
    return EXIT_OK


def make_parser():
    p = argparse.ArgumentParser(prog="segalkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--summary", action="store_true",
                        help="human-readable summary instead of JSON")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", parents=[common])
    b.add_argument("what", choices=["delta", "boundary", "upsilon", "theta",
                                    "boit", "attach", "jpre", "ibar",
                                    "nerve"])
    b.add_argument("-n", type=int, default=2)
    b.add_argument("-m", type=int, default=2)
    b.add_argument("--shape")
    b.add_argument("--fill")
    b.add_argument("--map")
    b.add_argument("--category", default="poset")
    b.add_argument("--trunc", type=int, default=3)
    b.add_argument("--interval-dim", type=int, default=4)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", parents=[common])
    c.add_argument("what", choices=["segal", "connected", "groupoid",
                                    "proto-groupoid", "free-ordered",
                                    "equivalence"])
    c.add_argument("object")
    c.add_argument("--map")
    c.add_argument("--order")
    c.add_argument("--strict", action="store_true")
    c.add_argument("--max-level", type=int, default=3)
    c.add_argument("--interval-dim", type=int, default=4)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("compute", parents=[common])
    k.add_argument("what", choices=["tau1", "tau0", "homotopy", "diagonal",
                                    "homology", "pi0", "pi1"])
    k.add_argument("object")
    k.add_argument("--max-level", type=int, default=3)
    k.add_argument("--max-dim", type=int, default=None)
    k.add_argument("--max-degree", type=int, default=None)
    k.add_argument("--homology", action="store_true")
    k.add_argument("--basepoint", default=None)
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_compute)

    pl = sub.add_parser("plan", parents=[common])
    pl.add_argument("what", choices=["run", "rationalize", "check-rational"])
    pl.add_argument("--object", required=True)
    pl.add_argument("--plan")
    pl.add_argument("--steps", type=int, default=1)
    pl.add_argument("--max-dim", type=int, default=None)
    pl.add_argument("--max-m", type=int, default=2)
    pl.add_argument("--max-k", type=int, default=0)
    pl.add_argument("-o", "--output")
    pl.set_defaults(func=cmd_plan)

    h = sub.add_parser("hom", parents=[common])
    h.add_argument("--object", required=True)
    h.add_argument("--fill", required=True)
    h.add_argument("-m", type=int, default=1)
    h.add_argument("--spine", action="store_true")
    h.set_defaults(func=cmd_hom)

    v = sub.add_parser("validate", parents=[common])
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(kit_io.dumps({"error": str(exc), "verdict": "Unknown",
                            "budget": default_budget()}), end="")
        return EXIT_UNDECIDED
    except SegalkitError as exc:
        print(kit_io.dumps({"error": str(exc)}), end="")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
