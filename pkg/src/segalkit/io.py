"""Self-contained JSON files for simplicial sets, precategories, maps and
plans.  Writing is canonical (sorted keys, sorted generator lists) so
that write(read(file)) is byte-identical."""

from __future__ import annotations

import json

from .errors import StructureError
from .precat import BiEl, Precategory, PrecatMap
from .sset import El, FiniteSimplicialSet, SSetMap


def el_to_json(el):
    return {"eta": list(el.word), "gen": el.gen}


def el_from_json(data):
    try:
        return El(tuple(data["eta"]), data["gen"])
    except (KeyError, TypeError) as exc:
        raise StructureError("malformed element: %s" % exc)


def biel_to_json(el):
    return {"eta_ext": list(el.eword), "eta_int": list(el.iword),
            "gen": el.gen}


def biel_from_json(data):
    try:
        return BiEl(tuple(data["eta_ext"]), tuple(data["eta_int"]),
                    data["gen"])
    except (KeyError, TypeError) as exc:
        raise StructureError("malformed element: %s" % exc)


def sset_to_json(X):
    return {
        "kind": "sset",
        "generators": [{"id": g, "dim": X.gens[g]} for g in sorted(X.gens)],
        "faces": {g: [el_to_json(X.face(g, i))
                      for i in range(X.gens[g] + 1)]
                  for g in sorted(X.gens) if X.gens[g] >= 1},
    }


def sset_from_json(data, name="sset"):
    if data.get("kind") != "sset":
        raise StructureError("expected a sset file")
    gens = {}
    for entry in data.get("generators", ()):
        gens[entry["id"]] = int(entry["dim"])
    faces = {}
    for g, lst in data.get("faces", {}).items():
        if g not in gens:
            raise StructureError("faces mention unknown generator %s" % g)
        if len(lst) != gens[g] + 1:
            raise StructureError("wrong face count at %s" % g)
        for i, entry in enumerate(lst):
            faces[(g, i)] = el_from_json(entry)
    return FiniteSimplicialSet(name, gens, faces)


def ssetmap_to_json(f):
    return {
        "kind": "ssetmap",
        "from": sset_to_json(f.source),
        "to": sset_to_json(f.target),
        "assign": {g: el_to_json(f.assign[g]) for g in sorted(f.assign)},
    }


def ssetmap_from_json(data):
    if data.get("kind") != "ssetmap":
        raise StructureError("expected a ssetmap file")
    src = sset_from_json(data["from"], "source")
    tgt = sset_from_json(data["to"], "target")
    assign = {g: el_from_json(e) for g, e in data.get("assign", {}).items()}
    return SSetMap(src, tgt, assign)


def precat_to_json(A):
    return {
        "kind": "precat",
        "generators": [{"id": g, "ext": A.gens[g][0], "int": A.gens[g][1]}
                       for g in sorted(A.gens)],
        "ext_faces": {g: [biel_to_json(A.eface(g, i))
                          for i in range(A.gens[g][0] + 1)]
                      for g in sorted(A.gens) if A.gens[g][0] >= 1},
        "int_faces": {g: [biel_to_json(A.iface(g, j))
                          for j in range(A.gens[g][1] + 1)]
                      for g in sorted(A.gens) if A.gens[g][1] >= 1},
    }


def precat_from_json(data, name="precat"):
    if data.get("kind") != "precat":
        raise StructureError("expected a precat file")
    gens = {}
    for entry in data.get("generators", ()):
        gens[entry["id"]] = (int(entry["ext"]), int(entry["int"]))
    efaces = {}
    for g, lst in data.get("ext_faces", {}).items():
        if g not in gens:
            raise StructureError("ext_faces mention unknown generator %s" % g)
        if len(lst) != gens[g][0] + 1:
            raise StructureError("wrong external face count at %s" % g)
        for i, entry in enumerate(lst):
            efaces[(g, i)] = biel_from_json(entry)
    ifaces = {}
    for g, lst in data.get("int_faces", {}).items():
        if g not in gens:
            raise StructureError("int_faces mention unknown generator %s" % g)
        if len(lst) != gens[g][1] + 1:
            raise StructureError("wrong internal face count at %s" % g)
        for j, entry in enumerate(lst):
            ifaces[(g, j)] = biel_from_json(entry)
    return Precategory(name, gens, efaces, ifaces)


def precatmap_to_json(f):
    return {
        "kind": "precatmap",
        "from": precat_to_json(f.source),
        "to": precat_to_json(f.target),
        "assign": {g: biel_to_json(f.assign[g]) for g in sorted(f.assign)},
    }


def precatmap_from_json(data):
    if data.get("kind") != "precatmap":
        raise StructureError("expected a precatmap file")
    src = precat_from_json(data["from"], "source")
    tgt = precat_from_json(data["to"], "target")
    assign = {g: biel_from_json(e) for g, e in data.get("assign", {}).items()}
    return PrecatMap(src, tgt, assign)


def plan_to_json(steps):
    """steps: list of lists of {"arrow": spec, "attach": assign, "mult"}."""
    return {"kind": "plan", "steps": steps}


def plan_from_json(data):
    if data.get("kind") != "plan":
        raise StructureError("expected a plan file")
    return data["steps"]


def arrow_spec_to_json(arrow):
    spec = {"type": arrow.tag}
    spec.update(arrow.params)
    return spec


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_file(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


def read_file(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureError("%s: invalid JSON at line %d column %d"
                                 % (path, exc.lineno, exc.colno))
