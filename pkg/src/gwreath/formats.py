"""Instance file parsing and the structured v1 output format.

Instance files are sectioned key/value text (sections ``delta``,
``gamma``, ``graph``, ``elements``); unknown sections or fields are
rejected with the offending line number.  Structured output is a
versioned, line-delimited document: the first line names the document
kind, every following line is ``key value`` with a stable key order, so
identical inputs always produce byte-identical output.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import (
    ArithmeticOffsets,
    DifferenceFamily,
    FactorialOffsets,
    FiniteModeGraph,
    FiniteOffsets,
    QuotientGraph,
    TranslationGraph,
)
from .groups import (
    Cyclic,
    CyclicPower,
    FiniteTable,
    FreeAbelian,
    GroupSpec,
    Symmetric,
)
from .lef import LEFCertificate, Truncation
from .wreath import (
    CheckRecord,
    Instance,
    NonRFWitness,
    Obstruction,
    RFCertificate,
    WreathElement,
)
from .words import EMPTY_WORD, Syllable, Word

FORMAT_VERSION = "v1"


# ---------------------------------------------------------------------------
# scalar pieces


def value_text(value) -> str:
    if isinstance(value, int):
        return str(value)
    if value == ():
        return "-"
    return ",".join(str(x) for x in value)


def parse_value(spec: GroupSpec, text: str, line: int | None = None):
    try:
        if isinstance(spec, (Cyclic, FiniteTable)):
            value = int(text)
        elif text == "-":
            value = ()
        else:
            value = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"cannot parse group element {text!r}", line=line) from None
    if not spec.contains(value):
        raise ParseError(f"{text!r} is not an element of the coefficient group", line=line)
    return value


def vertex_text(v) -> str:
    if isinstance(v, tuple):
        return f"{v[0]}:{v[1]}"
    return str(v)


def parse_vertex(graph, text: str, line: int | None = None):
    if ":" in text:
        label, _, pos = text.rpartition(":")
        try:
            v = (label, int(pos))
        except ValueError:
            raise ParseError(f"bad vertex {text!r}", line=line) from None
    else:
        try:
            v = int(text)
        except ValueError:
            raise ParseError(f"bad vertex {text!r}", line=line) from None
    if not graph.has_vertex(v):
        raise ParseError(f"vertex {text!r} does not belong to the graph", line=line)
    return v


def gamma_text(gamma) -> str:
    if isinstance(gamma, int):
        return str(gamma)
    if gamma == ():
        return "-"
    return ",".join(str(x) for x in gamma)


def parse_gamma(instance: Instance, text: str, line: int | None = None):
    kind = instance.graph.gamma_kind
    try:
        if kind in ("z", "z-mod"):
            gamma = int(text)
        elif text == "-":
            gamma = ()
        else:
            gamma = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"cannot parse acting element {text!r}", line=line) from None
    instance.check_gamma(gamma)
    return gamma


def word_text(w: Word) -> str:
    if w.is_empty:
        return "-"
    return " ".join(f"{vertex_text(s.vertex)}={value_text(s.value)}" for s in w)


def parse_word(graph, delta: GroupSpec, text: str, line: int | None = None) -> Word:
    text = text.strip()
    if text == "-" or not text:
        return EMPTY_WORD
    syllables = []
    for token in text.split():
        head, eq, tail = token.rpartition("=")
        if not eq:
            raise ParseError(f"bad syllable {token!r} (expected vertex=value)", line=line)
        vertex = parse_vertex(graph, head, line=line)
        value = parse_value(delta, tail, line=line)
        if delta.is_identity(value):
            raise ParseError(f"identity syllable {token!r}", line=line)
        syllables.append(Syllable(vertex, value))
    return Word(tuple(syllables))


def family_text(family: DifferenceFamily) -> str:
    if isinstance(family, FiniteOffsets):
        return "finite " + " ".join(str(d) for d in sorted(family.offsets) if d > 0)
    if isinstance(family, FactorialOffsets):
        return f"factorial {family.shift}"
    return f"arithmetic {family.start} {family.step}"


def parse_family(tokens: list[str], line: int | None = None) -> DifferenceFamily:
    if not tokens:
        raise ParseError("missing family kind", line=line)
    kind, args = tokens[0], tokens[1:]
    try:
        if kind == "finite":
            return FiniteOffsets(frozenset(int(a) for a in args))
        if kind == "factorial":
            (shift,) = args
            return FactorialOffsets(int(shift))
        if kind == "arithmetic":
            start, step = args
            return ArithmeticOffsets(int(start), int(step))
    except (ValueError, TypeError):
        raise ParseError(f"bad family arguments {args!r}", line=line) from None
    raise ParseError(f"unknown family kind {kind!r}", line=line)


def delta_text(spec: GroupSpec) -> str:
    if isinstance(spec, Cyclic):
        return f"cyclic {spec.n}"
    if isinstance(spec, Symmetric):
        return f"symmetric {spec.degree}"
    if isinstance(spec, FreeAbelian):
        return f"free-abelian {spec.rank}"
    if isinstance(spec, CyclicPower):
        return f"cyclic-power {spec.n} {spec.rank}"
    if isinstance(spec, FiniteTable):
        rows = ";".join(",".join(str(x) for x in row) for row in spec.table)
        return f"table {spec.size} {spec.identity_index} {rows}"
    raise ParseError(f"unknown group spec {spec!r}")


# ---------------------------------------------------------------------------
# instance files


_SECTION_FIELDS = {
    "delta": {"kind", "order", "degree", "rank", "size", "identity", "row"},
    "gamma": {"kind"},
    "graph": {"mode", "orbits", "family", "vertices", "edge", "generator"},
    "elements": None,  # any name is a valid element name
}


def _split_sections(text: str):
    sections: dict[str, list[tuple[str, str, int]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if name not in _SECTION_FIELDS:
                raise ParseError(f"unknown section [{name}]", line=lineno)
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", line=lineno)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise ParseError("content before the first section header", line=lineno)
        key, eq, value = stripped.partition("=")
        if not eq:
            raise ParseError("expected 'key = value'", line=lineno)
        key, value = key.strip(), value.strip()
        allowed = _SECTION_FIELDS[current]
        if allowed is not None and key not in allowed:
            raise ParseError(f"unknown field in [{current}]", line=lineno, field=key)
        sections[current].append((key, value, lineno))
    return sections


def _single(entries, key, *, required=True, section=""):
    hits = [(v, n) for k, v, n in entries if k == key]
    if not hits:
        if required:
            raise ParseError(f"missing field {key!r} in [{section}]")
        return None, None
    if len(hits) > 1:
        raise ParseError(f"field {key!r} repeated in [{section}]", line=hits[1][1])
    return hits[0]


def _parse_delta(entries) -> GroupSpec:
    kind, line = _single(entries, "kind", section="delta")
    try:
        if kind == "cyclic":
            order, line = _single(entries, "order", section="delta")
            return Cyclic(int(order))
        if kind == "symmetric":
            degree, line = _single(entries, "degree", section="delta")
            return Symmetric(int(degree))
        if kind == "free-abelian":
            rank, line = _single(entries, "rank", section="delta")
            return FreeAbelian(int(rank))
        if kind == "table":
            size, line = _single(entries, "size", section="delta")
            identity, _ = _single(entries, "identity", section="delta")
            rows = [(v, n) for k, v, n in entries if k == "row"]
            table = tuple(
                tuple(int(x) for x in value.split()) for value, _ in rows
            )
            return FiniteTable(int(size), table, int(identity))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad coefficient group: {exc}", line=line) from None
    raise ParseError(f"unknown coefficient group kind {kind!r}", line=line)


def _parse_graph(entries):
    mode, line = _single(entries, "mode", section="graph")
    if mode == "translation":
        orbits, line = _single(entries, "orbits", section="graph")
        labels = tuple(orbits.split())
        families: dict[tuple[str, str], list[DifferenceFamily]] = {}
        for key, value, lineno in entries:
            if key != "family":
                continue
            tokens = value.split()
            if len(tokens) < 3:
                raise ParseError(
                    "family needs 'LABEL LABEL KIND ...'", line=lineno, field="family"
                )
            c1, c2 = tokens[0], tokens[1]
            if c1 not in labels or c2 not in labels:
                raise ParseError(f"unknown orbit label in family", line=lineno, field="family")
            i, j = labels.index(c1), labels.index(c2)
            pair = (c1, c2) if i <= j else (c2, c1)
            families.setdefault(pair, []).append(parse_family(tokens[2:], line=lineno))
        return TranslationGraph(labels, {p: tuple(f) for p, f in families.items()})
    if mode == "finite":
        verts_text, line = _single(entries, "vertices", section="graph")
        try:
            vertices = tuple(int(x) for x in verts_text.split())
        except ValueError:
            raise ParseError("vertices must be integers", line=line) from None
        edges = set()
        generators = []
        for key, value, lineno in entries:
            if key == "edge":
                try:
                    u, w = (int(x) for x in value.split())
                except ValueError:
                    raise ParseError("edge needs two vertex ids", line=lineno) from None
                edges.add((u, w))
            elif key == "generator":
                try:
                    generators.append(tuple(int(x) for x in value.split()))
                except ValueError:
                    raise ParseError("generator must list vertex images", line=lineno) from None
        return FiniteModeGraph(vertices, frozenset(edges), tuple(generators))
    raise ParseError(f"unknown graph mode {mode!r}", line=line)


def parse_instance_text(text: str) -> tuple[Instance, dict[str, WreathElement]]:
    sections = _split_sections(text)
    for required in ("delta", "gamma", "graph"):
        if required not in sections:
            raise ParseError(f"missing section [{required}]")
    delta = _parse_delta(sections["delta"])
    graph = _parse_graph(sections["graph"])
    gamma_kind, line = _single(sections["gamma"], "kind", section="gamma")
    if isinstance(graph, TranslationGraph):
        if gamma_kind != "z":
            raise ParseError("translation graphs require gamma kind 'z'", line=line)
    else:
        expected = f"z^{graph.rank}"
        if gamma_kind != expected:
            raise ParseError(
                f"finite-mode graph with {graph.rank} generator(s) requires "
                f"gamma kind {expected!r}",
                line=line,
            )
    instance = Instance(delta, graph)
    elements: dict[str, WreathElement] = {}
    for name, value, lineno in sections.get("elements", []):
        if name in elements:
            raise ParseError(f"duplicate element name {name!r}", line=lineno)
        body, at, gamma_part = value.rpartition("@")
        if not at:
            raise ParseError("element needs 'SYLLABLES @ GAMMA'", line=lineno, field=name)
        w = parse_word(graph, delta, body.strip(), line=lineno)
        gamma = parse_gamma(instance, gamma_part.strip(), line=lineno)
        elements[name] = WreathElement(w, gamma)
    return instance, elements


def load_instance(path) -> tuple[Instance, dict[str, WreathElement]]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance_text(handle.read())


# ---------------------------------------------------------------------------
# structured v1 documents


def _header(kind: str) -> str:
    return f"gwreath {FORMAT_VERSION} {kind}"


def parse_structured(text: str) -> tuple[str, dict[str, list[str]]]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty document")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "gwreath":
        raise ParseError(f"bad header {lines[0]!r}", line=1)
    if head[1] != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {head[1]!r}", line=1)
    record: dict[str, list[str]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        key, _, value = line.partition(" ")
        if not key:
            raise ParseError("expected 'key value'", line=lineno)
        record.setdefault(key, []).append(value.strip())
    return head[2], record


def _one(record, key, *, required=True) -> str | None:
    values = record.get(key, [])
    if not values:
        if required:
            raise ParseError(f"missing key {key!r}")
        return None
    if len(values) > 1:
        raise ParseError(f"key {key!r} repeated")
    return values[0]


def _check_text(flag: bool | None) -> str:
    if flag is None:
        return "skipped-abelian"
    return "pass" if flag else "fail"


def _parse_check(text: str) -> bool | None:
    if text == "skipped-abelian":
        return None
    if text in ("pass", "fail"):
        return text == "pass"
    raise ParseError(f"bad check value {text!r}")


def quotient_lines(q: QuotientGraph, prefix: str = "quotient") -> list[str]:
    out = [f"{prefix}.kind {q.kind}"]
    if q.kind == "translation":
        out.append(f"{prefix}.modulus {q.modulus}")
        out.append(f"{prefix}.labels " + (" ".join(q.labels) if q.labels else "-"))
    else:
        groups: dict[int, list[int]] = {}
        for v, rep in sorted(q.orbit_map.items()):
            groups.setdefault(rep, []).append(v)
        for rep in sorted(groups):
            out.append(f"{prefix}.orbit {rep} " + " ".join(str(v) for v in groups[rep]))
    for v in sorted(q.vertices, key=q.vertex_key):
        out.append(f"{prefix}.vertex {vertex_text(v)}")
    for u, w in sorted(q.edges, key=lambda e: (q.vertex_key(e[0]), q.vertex_key(e[1]))):
        out.append(f"{prefix}.edge {vertex_text(u)}|{vertex_text(w)}")
    for v in sorted(q.loops, key=q.vertex_key):
        out.append(f"{prefix}.loop {vertex_text(v)}")
    for v in sorted(q.lift, key=q.vertex_key):
        out.append(f"{prefix}.lift {vertex_text(v)} {vertex_text(q.lift[v])}")
    return out


def _parse_quotient_vertex(text: str, line: int | None = None):
    if ":" in text:
        label, _, pos = text.rpartition(":")
        try:
            return (label, int(pos))
        except ValueError:
            raise ParseError(f"bad orbit id {text!r}", line=line) from None
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad orbit id {text!r}", line=line) from None


def parse_quotient(record, prefix: str = "quotient") -> QuotientGraph:
    kind = _one(record, f"{prefix}.kind")
    vertices = [_parse_quotient_vertex(t) for t in record.get(f"{prefix}.vertex", [])]
    edges = set()
    for entry in record.get(f"{prefix}.edge", []):
        left, _, right = entry.partition("|")
        edges.add((_parse_quotient_vertex(left), _parse_quotient_vertex(right)))
    loops = {_parse_quotient_vertex(t) for t in record.get(f"{prefix}.loop", [])}
    lift = {}
    for entry in record.get(f"{prefix}.lift", []):
        key_text, _, value_text_ = entry.partition(" ")
        lift[_parse_quotient_vertex(key_text)] = _parse_quotient_vertex(value_text_)
    if kind == "translation":
        modulus = int(_one(record, f"{prefix}.modulus"))
        labels_text = _one(record, f"{prefix}.labels")
        labels = tuple(labels_text.split()) if labels_text != "-" else ()
        return QuotientGraph(
            "translation", vertices, edges, loops, lift, modulus=modulus, labels=labels
        )
    if kind == "finite":
        orbit_map = {}
        for entry in record.get(f"{prefix}.orbit", []):
            ids = [int(x) for x in entry.split()]
            rep, members = ids[0], ids[1:]
            for member in members:
                orbit_map[member] = rep
        return QuotientGraph("finite", vertices, edges, loops, lift, orbit_map=orbit_map)
    raise ParseError(f"unknown quotient kind {kind!r}")


def certificate_lines(instance: Instance, cert: RFCertificate) -> list[str]:
    out = [_header("separation-certificate")]
    out.append(f"element.word {word_text(cert.element.word)}")
    out.append(f"element.gamma {gamma_text(cert.element.gamma)}")
    out.append(f"subgroup.kind {cert.kind}")
    if cert.kind == "modulus":
        out.append(f"subgroup.modulus {cert.modulus}")
    else:
        for perm in cert.subgroup_perms:
            out.append("subgroup.perm " + ",".join(str(x) for x in perm))
    restricted = " ".join(
        vertex_text(v) if isinstance(v, tuple) else str(v) for v in cert.restricted
    )
    out.append("restricted " + (restricted if restricted else "-"))
    out.extend(quotient_lines(cert.quotient))
    if cert.kind == "modulus":
        out.append(f"image.gamma {cert.gamma_image}")
    else:
        if cert.gamma_image is None:
            out.append("image.gamma-coset trivial")
        else:
            out.append("image.gamma-coset " + ",".join(str(x) for x in cert.gamma_image))
    out.append(f"image.word {word_text(cert.word_image)}")
    out.append(f"check.gamma-injective {_check_text(cert.checks.gamma_injective)}")
    out.append(
        f"check.induced-isomorphism {_check_text(cert.checks.induced_isomorphism)}"
    )
    out.append(f"check.loops-clear {_check_text(cert.checks.loops_clear)}")
    out.append(f"check.image-nontrivial {_check_text(cert.checks.image_nontrivial)}")
    return out


def certificate_from_record(instance: Instance, record) -> RFCertificate:
    graph, delta = instance.graph, instance.delta
    w = parse_word(graph, delta, _one(record, "element.word"))
    gamma = parse_gamma(instance, _one(record, "element.gamma"))
    element = WreathElement(w, gamma)
    kind = _one(record, "subgroup.kind")
    quotient = parse_quotient(record)
    if kind == "modulus":
        modulus = int(_one(record, "subgroup.modulus"))
        subgroup_perms = None
        gamma_image = int(_one(record, "image.gamma"))
    elif kind == "image-subgroup":
        modulus = None
        subgroup_perms = tuple(
            sorted(
                tuple(int(x) for x in entry.split(","))
                for entry in record.get("subgroup.perm", [])
            )
        )
        coset = _one(record, "image.gamma-coset")
        gamma_image = None if coset == "trivial" else tuple(int(x) for x in coset.split(","))
    else:
        raise ParseError(f"unknown subgroup kind {kind!r}")
    restricted_text = _one(record, "restricted")
    if restricted_text == "-":
        restricted: tuple = ()
    elif isinstance(graph, TranslationGraph):
        restricted = tuple(restricted_text.split())
    else:
        restricted = tuple(int(x) for x in restricted_text.split())
    word_image = parse_word(quotient, delta, _one(record, "image.word"))
    checks = CheckRecord(
        gamma_injective=_parse_check(_one(record, "check.gamma-injective")),
        induced_isomorphism=_parse_check(_one(record, "check.induced-isomorphism")),
        loops_clear=_parse_check(_one(record, "check.loops-clear")),
        image_nontrivial=_parse_check(_one(record, "check.image-nontrivial")),
    )
    return RFCertificate(
        element=element,
        kind=kind,
        modulus=modulus,
        subgroup_perms=subgroup_perms,
        restricted=restricted,
        quotient=quotient,
        gamma_image=gamma_image,
        word_image=word_image,
        checks=checks,
    )


def witness_lines(instance: Instance, wit: NonRFWitness) -> list[str]:
    out = [_header("witness")]
    out.append(f"kind {wit.theorem}")
    for v in wit.vertices:
        out.append(f"vertex {vertex_text(v)}")
    for el in wit.delta_elements:
        out.append(f"delta-element {value_text(el)}")
    out.append(f"element.word {word_text(wit.element.word)}")
    out.append(f"element.gamma {gamma_text(wit.element.gamma)}")
    obs = wit.obstruction
    out.append(f"obstruction.lemma {obs.lemma}")
    out.append(f"obstruction.pair {obs.pair[0]} {obs.pair[1]}")
    out.append(f"obstruction.family {family_text(obs.family)}")
    out.append(
        "obstruction.offset " + ("-" if obs.offset is None else str(obs.offset))
    )
    out.append(f"obstruction.statement {obs.statement}")
    return out


def witness_from_record(instance: Instance, record) -> NonRFWitness:
    graph, delta = instance.graph, instance.delta
    kind = _one(record, "kind")
    vertices = tuple(parse_vertex(graph, t) for t in record.get("vertex", []))
    elements = tuple(parse_value(delta, t) for t in record.get("delta-element", []))
    w = parse_word(graph, delta, _one(record, "element.word"))
    gamma = parse_gamma(instance, _one(record, "element.gamma"))
    pair_text = _one(record, "obstruction.pair").split()
    family = parse_family(_one(record, "obstruction.family").split())
    offset_text = _one(record, "obstruction.offset")
    obstruction = Obstruction(
        lemma=_one(record, "obstruction.lemma"),
        pair=(pair_text[0], pair_text[1]),
        family=family,
        offset=None if offset_text == "-" else int(offset_text),
        statement=_one(record, "obstruction.statement"),
    )
    return NonRFWitness(
        theorem=kind,
        vertices=vertices,
        delta_elements=elements,
        element=WreathElement(w, gamma),
        obstruction=obstruction,
    )


def lef_lines(graph: TranslationGraph, cert: LEFCertificate) -> list[str]:
    out = [_header("lef-certificate")]
    out.append(f"q {delta_text(cert.q_spec)}")
    if cert.truncation is not None:
        out.append(f"modulus {cert.truncation.modulus}")
        for (c1, c2) in sorted(
            cert.truncation.kept_offsets,
            key=lambda p: (graph.label_index(p[0]), graph.label_index(p[1])),
        ):
            offsets = sorted(cert.truncation.kept_offsets[(c1, c2)])
            out.append(
                f"truncation.offsets {c1} {c2} " + " ".join(str(o) for o in offsets)
            )
    out.extend(quotient_lines(cert.y, prefix="y"))
    for g in sorted(cert.phi):
        out.append(f"phi {g} {cert.phi[g]}")
    for v in sorted(cert.psi, key=graph.vertex_key):
        out.append(f"psi {vertex_text(v)} {vertex_text(cert.psi[v])}")
    return out


def lef_from_record(graph: TranslationGraph, record) -> LEFCertificate:
    q_tokens = _one(record, "q").split()
    if q_tokens[0] != "cyclic":
        raise ParseError(f"unsupported finite model group {q_tokens[0]!r}")
    q_spec = Cyclic(int(q_tokens[1]))
    y = parse_quotient(record, prefix="y")
    phi = {}
    for entry in record.get("phi", []):
        a, image = entry.split()
        phi[int(a)] = int(image)
    psi = {}
    for entry in record.get("psi", []):
        source, image = entry.split()
        psi[parse_vertex(graph, source)] = _parse_quotient_vertex(image)
    truncation = None
    modulus_text = _one(record, "modulus", required=False)
    if modulus_text is not None:
        kept = {}
        for entry in record.get("truncation.offsets", []):
            tokens = entry.split()
            kept[(tokens[0], tokens[1])] = frozenset(int(x) for x in tokens[2:])
        families = {
            pair: (FiniteOffsets(offs),) for pair, offs in kept.items() if offs
        }
        truncated = TranslationGraph(graph.labels, families)
        truncation = Truncation(kept_offsets=kept, graph=truncated, modulus=int(modulus_text))
    return LEFCertificate(q_spec=q_spec, y=y, phi=phi, psi=psi, truncation=truncation)


def wreath_element_lines(instance: Instance, x: WreathElement) -> list[str]:
    return [
        _header("wreath-element"),
        f"word {word_text(x.word)}",
        f"gamma {gamma_text(x.gamma)}",
    ]


def fp_lines(report) -> list[str]:
    out = [_header("fp-report")]
    out.append(f"finitely-presented {'true' if report.finitely_presented else 'false'}")
    out.append(f"vertex-orbits {report.vertex_orbits}")
    out.append(
        "edge-orbits "
        + ("infinite" if report.edge_orbits is None else str(report.edge_orbits))
    )
    for cond in report.conditions:
        out.append(f"condition {cond.name} {'pass' if cond.ok else 'fail'} {cond.reason}")
    return out


def verdict_lines(instance: Instance, verdict) -> list[str]:
    out = [_header("verdict")]
    out.append(f"status {verdict.status}")
    out.append(f"condition-1 {verdict.cond1_note}")
    if verdict.note:
        out.append(f"note {verdict.note}")
    if verdict.cond2 is not None:
        c2 = verdict.cond2
        out.append(f"condition-2.holds {_tri(c2.holds)}")
        out.append(f"condition-2.abelian {'true' if c2.abelian else 'false'}")
        if c2.abelian_rule:
            out.append(f"condition-2.abelian-rule {c2.abelian_rule}")
        for e in c2.per_orbit:
            suffix = ""
            if e.modulus is not None:
                suffix = f" modulus {e.modulus}"
            elif e.subgroup_index is not None:
                suffix = f" subgroup-index {e.subgroup_index}"
            elif e.obstruction is not None:
                suffix = f" lemma {e.obstruction.lemma}"
            out.append(f"condition-2.orbit {e.orbit} {e.status}{suffix}")
    if verdict.cond3 is not None:
        c3 = verdict.cond3
        out.append(f"condition-3.holds {_tri(c3.holds)}")
        if c3.t_max is not None:
            out.append(f"condition-3.offset-window {c3.t_max}")
        for e in c3.per_pair:
            pair = " ".join(str(p) for p in e.pair)
            line = f"condition-3.pair {pair} {e.status}"
            if e.rule:
                line += f" rule {e.rule}"
            if e.failures:
                t, obs = e.failures[0]
                line += f" offset {t} lemma {obs.lemma}"
            out.append(line)
    if verdict.witness is not None:
        for line in witness_lines(instance, verdict.witness)[1:]:
            out.append(f"witness.{line}")
    if verdict.bound is not None:
        out.append(f"bound {verdict.bound}")
    if verdict.failing_condition:
        out.append(f"failing-condition {verdict.failing_condition}")
    return out


def _tri(value: bool | None) -> str:
    if value is None:
        return "unknown"
    return "true" if value else "false"


# ---------------------------------------------------------------------------
# human-readable rendering


def render_verdict(instance: Instance, verdict) -> list[str]:
    if verdict.status == "residually-finite":
        out = ["RESIDUALLY FINITE"]
    elif verdict.status == "not-residually-finite":
        out = [f"NOT RESIDUALLY FINITE (witness {verdict.witness.theorem})"]
    else:
        out = [
            f"UNKNOWN (bound {verdict.bound} exhausted on {verdict.failing_condition})"
        ]
    out.append(f"  condition 1: {verdict.cond1_note}")
    if verdict.note:
        out.append(f"  note: {verdict.note}")
    if verdict.cond2 is not None:
        c2 = verdict.cond2
        out.append(f"  condition 2: {_tri(c2.holds)}")
        if c2.abelian:
            out.append(f"    abelian coefficients: {c2.abelian_rule}")
        for e in c2.per_orbit:
            if e.modulus is not None:
                out.append(f"    orbit {e.orbit}: clears its neighbourhood at modulus {e.modulus}")
            elif e.subgroup_index is not None:
                out.append(
                    f"    orbit {e.orbit}: clears its neighbourhood at subgroup index {e.subgroup_index}"
                )
            elif e.obstruction is not None:
                out.append(f"    orbit {e.orbit}: fails for every modulus ({e.obstruction.statement})")
            else:
                out.append(f"    orbit {e.orbit}: unresolved within the bound")
    if verdict.cond3 is not None:
        c3 = verdict.cond3
        out.append(f"  condition 3: {_tri(c3.holds)}")
        for e in c3.per_pair:
            pair = ", ".join(str(p) for p in e.pair)
            if e.status == "fails":
                t, obs = e.failures[0]
                out.append(f"    pair ({pair}): fails at offset {t} ({obs.statement})")
            elif e.rule:
                out.append(f"    pair ({pair}): {e.status} ({e.rule})")
            else:
                out.append(f"    pair ({pair}): {e.status}")
    if verdict.witness is not None:
        wit = verdict.witness
        verts = ", ".join(vertex_text(v) for v in wit.vertices)
        out.append(
            f"  witness {wit.theorem}: element {word_text(wit.element.word)} at {verts}"
        )
        out.append(f"  obstruction: {wit.obstruction.statement}")
    return out


def render_certificate(instance: Instance, cert: RFCertificate) -> list[str]:
    if cert.kind == "modulus":
        head = f"SEPARATED with modulus {cert.modulus}"
    else:
        index = "trivial" if not cert.subgroup_perms else len(cert.subgroup_perms)
        head = f"SEPARATED with an image subgroup of order {index}"
    out = [head]
    out.append(f"  element: {word_text(cert.element.word)} @ {gamma_text(cert.element.gamma)}")
    out.append(f"  image word: {word_text(cert.word_image)}")
    if cert.kind == "modulus":
        out.append(f"  image gamma: {cert.gamma_image}")
    else:
        coset = "trivial" if cert.gamma_image is None else ",".join(map(str, cert.gamma_image))
        out.append(f"  image gamma coset: {coset}")
    out.append(
        "  checks: gamma-injective="
        + _check_text(cert.checks.gamma_injective)
        + ", induced-isomorphism="
        + _check_text(cert.checks.induced_isomorphism)
        + ", loops-clear="
        + _check_text(cert.checks.loops_clear)
        + ", image-nontrivial="
        + _check_text(cert.checks.image_nontrivial)
    )
    return out


def render_fp(report) -> list[str]:
    head = "FINITELY PRESENTED" if report.finitely_presented else "NOT FINITELY PRESENTED"
    out = [head]
    for cond in report.conditions:
        mark = "ok" if cond.ok else "FAIL"
        out.append(f"  {cond.name}: {mark} ({cond.reason})")
    return out


def render_witness(instance: Instance, wit: NonRFWitness) -> list[str]:
    verts = ", ".join(vertex_text(v) for v in wit.vertices)
    return [
        f"WITNESS {wit.theorem}",
        f"  vertices: {verts}",
        f"  element: {word_text(wit.element.word)} @ {gamma_text(wit.element.gamma)}",
        f"  obstruction [{wit.obstruction.lemma}]: {wit.obstruction.statement}",
    ]


def render_lef(graph: TranslationGraph, cert: LEFCertificate) -> list[str]:
    out = [f"LEF MODEL with group of order {cert.q_spec.order()}"]
    if cert.truncation is not None:
        kept = sorted(
            (pair, sorted(offs)) for pair, offs in cert.truncation.kept_offsets.items()
        )
        out.append(f"  retained offsets: {kept if kept else 'none'}")
    out.append(f"  graph vertices: {len(cert.y.vertices)}")
    out.append(
        "  phi: " + (", ".join(f"{a}->{cert.phi[a]}" for a in sorted(cert.phi)) or "-")
    )
    out.append(
        "  psi: "
        + (
            ", ".join(
                f"{vertex_text(v)}->{vertex_text(cert.psi[v])}"
                for v in sorted(cert.psi, key=graph.vertex_key)
            )
            or "-"
        )
    )
    return out
