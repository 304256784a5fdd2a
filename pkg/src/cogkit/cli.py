"""
Command-line entry point.  Every subcommand prints a JSON report (or a dot
or text export) and exits 0 when all verifications pass, 1 when one fails
and 2 on bad input.
"""

import argparse
import json
import sys

from . import covering as cov
from .cog import build_g_k, build_g_p, euler_orbifold
from .complexes import (BipartiteGraph, build_chamber, build_x, chamber_scwol,
                        graph_isomorphic, hyperbolicity_report, link)
from .presentation import (build_amalgam, direct_limit, kg1_euler_formula, kg1_gluing,
                           presentation_h, presentations_gamma_w, raag_check)


class InputError(Exception):
    pass


def load_graph(args):
    if args.graph:
        try:
            with open(args.graph) as fh:
                graph = BipartiteGraph.from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read graph {args.graph}: {exc}")
    elif args.q1 is not None and args.q2 is not None:
        graph = BipartiteGraph.complete(args.q1, args.q2)
    else:
        raise InputError("give either --graph or both --q1 and --q2")
    problems = graph.validate()
    if problems:
        raise InputError("; ".join(problems))
    return graph


def complete_sizes(args):
    graph = load_graph(args)
    if not graph.is_complete():
        raise InputError("this subcommand needs a complete bipartite graph")
    if graph.q1 < 2 or graph.q2 < 2:
        raise InputError("q1 and q2 must be at least 2")
    return graph.q1, graph.q2


def link_report(X, graph):
    target = graph.to_networkx()
    out = {}
    for v in X.vertices:
        iso = graph_isomorphic(link(X, v), target)
        out[v] = {"isomorphic": iso is not None,
                  "map": {str(k): str(w) for k, w in sorted(iso.items())} if iso else None}
    return out


def cmd_build_x(args):
    graph = load_graph(args)
    X = build_x(args.m, graph)
    if args.format == "dot":
        return X.to_dot(f"X_{2 * args.m}"), True
    links = link_report(X, graph)
    problems = X.validate()
    ok = not problems and all(r["isomorphic"] for r in links.values())
    chi = X.euler_characteristic()
    report = {"ok": ok, "m": args.m, "graph": graph.to_json(),
              "counts": {"vertices": len(X.vertices), "edges": len(X.edges), "faces": len(X.faces)},
              "chi": chi, "diagnostics": problems, "links": links, "complex": X.to_json()}
    if args.format == "text":
        return (f"X_(2m,L) m={args.m}: V={len(X.vertices)} E={len(X.edges)} F={len(X.faces)} "
                f"chi={chi} links={'ok' if ok else 'FAILED'}\n"), ok
    return report, ok


def cmd_chamber(args):
    graph = load_graph(args)
    K = build_chamber(args.m, graph)
    s = chamber_scwol(K)
    if args.format == "dot":
        return s.to_dot("K"), True
    bad = s.type_violations()
    return {"ok": not bad, "chamber": K.to_json(), "scwol": s.to_json(),
            "type_violations": [str(a) for a in bad]}, not bad


def build_cog(args):
    if args.which == "p":
        q1, q2 = complete_sizes(args)
        return build_g_p(args.m, q1, q2)
    return build_g_k(args.m, load_graph(args))


def cmd_cog(args):
    c = build_cog(args)
    if args.format == "dot":
        return c.base.to_dot(c.name), True
    report = c.report()
    report["ok"] = not report["diagnostics"]
    report["sheet_lower_bound"] = cov.sheet_lower_bound(c)
    return report, report["ok"]


def covering_report(data, bound):
    rep = cov.verify_covering(data)
    euler = cov.euler_check(data, rep)
    out = rep.to_json()
    out["euler"] = euler
    out["sheet_lower_bound"] = bound
    out["minimal"] = rep.sheets == bound
    out["phi"] = {cov_edge(a): data.phi_name(a) for a in sorted(data.phi, key=str)}
    ok = rep.ok and euler["ok"]
    out["ok"] = ok
    return out, ok


def cov_edge(a):
    i, t = a
    return f"{i}->{t}"


def resolve_phi(args, data):
    if args.seed_phi == "paper":
        return data
    found = cov.search_covering(data.domain, data.codomain, data.f)
    if found is None:
        raise SearchFailed
    return found


class SearchFailed(Exception):
    pass


def cmd_cover_gamma(args):
    q1, q2 = complete_sizes(args)
    data = cov.build_phi_gamma(args.m, q1, q2)
    return covering_report(resolve_phi(args, data), cov.sheet_lower_bound(data.codomain))


def cmd_cover_w(args):
    data = cov.build_psi_w(args.m, load_graph(args))
    return covering_report(resolve_phi(args, data), cov.sheet_lower_bound(data.codomain))


def cmd_cover_search(args):
    args.seed_phi = "search"
    if args.which == "p":
        return cmd_cover_gamma(args)
    return cmd_cover_w(args)


def cmd_euler(args):
    graph = load_graph(args)
    X = build_x(args.m, graph)
    chi = X.euler_characteristic()
    formula = 2 * args.m - args.m * (graph.q1 + graph.q2) + len(graph.edges)
    out = {"chiX": chi, "formula": formula,
           "chiOrb_GK": cov.rational_json(euler_orbifold(build_g_k(args.m, graph)))}
    if graph.is_complete() and graph.q1 >= 2 and graph.q2 >= 2:
        out["chiOrb_GP"] = cov.rational_json(euler_orbifold(build_g_p(args.m, graph.q1, graph.q2)))
    out["ok"] = chi == formula
    return out, out["ok"]


def cmd_present(args):
    q1, q2 = complete_sizes(args)
    h = presentation_h(args.m, q1, q2)
    gamma, w = presentations_gamma_w(args.m, q1, q2)
    if args.format == "text":
        return f"H = {h.to_text()}\nGamma = {gamma.to_text()}\nW = {w.to_text()}\n", True
    expected = (q1 - 1) * (q2 - 1)
    ok = len(h.relators) == expected
    return {"ok": ok, "H": h.to_json(), "Gamma": gamma.to_json(), "W": w.to_json(),
            "relator_count": len(h.relators), "expected_relator_count": expected}, ok


def cmd_amalgam(args):
    q1, q2 = complete_sizes(args)
    gog = build_amalgam(args.m, q1, q2)
    limit = direct_limit(gog)
    same = limit.equivalent(presentation_h(args.m, q1, q2))
    problems = gog.validate()
    ok = same and not problems
    return {"ok": ok, "base": gog.base.to_json(),
            "groups": {v: gog.groups[v].to_json() for v in gog.base.vertices},
            "maps": {cov_edge(a): gog.maps[a] for a in gog.base.edges},
            "direct_limit": limit.to_json(), "equals_presentation_h": same,
            "diagnostics": problems}, ok


def cmd_kg1(args):
    q1, q2 = complete_sizes(args)
    g = kg1_gluing(args.m, q1, q2)
    v, e, f = g.counts()
    chi = g.euler_characteristic()
    formula = kg1_euler_formula(args.m, q1, q2)
    report = {"ok": chi == formula, "vertices": v, "edges": e, "faces": f,
              "chi": chi, "formula": formula, "polygon_sides": 4 * (args.m - 1),
              "faces_words": {n: [a if s > 0 else f"{a}(-1)" for a, s in w]
                              for n, w in g.faces.items()}}
    if args.m == 2:
        report["raag"] = raag_check(2, q1, q2)
        report["ok"] = report["ok"] and report["raag"]
    return report, report["ok"]


def cmd_hyperbolicity(args):
    report = hyperbolicity_report(args.m, load_graph(args))
    return report, True


COMMANDS = {
    "build-x": cmd_build_x,
    "chamber": cmd_chamber,
    "cog": cmd_cog,
    "cover-gamma": cmd_cover_gamma,
    "cover-w": cmd_cover_w,
    "cover-search": cmd_cover_search,
    "euler": cmd_euler,
    "present": cmd_present,
    "amalgam": cmd_amalgam,
    "kg1": cmd_kg1,
    "hyperbolicity": cmd_hyperbolicity,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="cogkit", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--q1", type=int)
        p.add_argument("--q2", type=int)
        p.add_argument("--graph", help="bipartite graph JSON {left, right, edges}")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        if name in ("cover-gamma", "cover-w"):
            p.add_argument("--seed-phi", choices=["paper", "search"], default="paper")
        if name in ("cog", "cover-search"):
            p.add_argument("--which", choices=["p", "k"], default="k")
    return parser


def render(result, fmt):
    if isinstance(result, str):
        return result
    if fmt == "text":
        return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in result.items())
    return json.dumps(result, indent=2, sort_keys=True) + "\n"


def main(argv=None):
    args = make_parser().parse_args(argv)
    if args.m < 2:
        print("error: --m must be at least 2", file=sys.stderr)
        return 2
    try:
        result, ok = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchFailed:
        result, ok = {"ok": False, "diagnostics": ["search found no covering for this morphism"]}, False
    text = render(result, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
