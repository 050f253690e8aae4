"""Key identification and disambiguation inside clusters.

Near-identical resources (two sonatas differing only in their opus
number) survive candidate matching together; the property whose values
best separate the cluster's members is the "key".  Discriminativity of
a property within a cluster is

    (distinct value ratio among holders) * (coverage ratio)

and pairs are linked only when their values agree on the top-ranked key
both sides carry.
"""

from __future__ import annotations

from dataclasses import dataclass

from cantor.graph import Iri, Literal
from cantor.linking.profiles import ResourceProfile
from cantor.schema import RDF_TYPE
from cantor.text import normalize_label
from cantor.vocab import VocabularyRegistry

# relational plumbing never acts as a key
_STRUCTURAL = {RDF_TYPE}


def property_values(resource_profile: ResourceProfile, registry: VocabularyRegistry) -> dict[Iri, frozenset]:
    """Comparable value atoms per direct property of the resource.

    Literals normalize to their text; concept IRIs contribute their IRI
    plus every label, so a literal and the concept it names still agree.
    IRIs pointing at non-concept nodes are structural and skipped.
    """
    values: dict[Iri, set] = {}
    graph = resource_profile.triples
    for triple in graph.match(resource_profile.resource, None, None):
        if triple.predicate in _STRUCTURAL:
            continue
        obj = triple.object
        atoms: set[str] = set()
        if isinstance(obj, Literal):
            atoms.add(normalize_label(obj.lexical))
        elif isinstance(obj, Iri):
            labels = registry.concept_labels(obj)
            if labels is None:
                continue
            atoms.add(obj.value)
            atoms.update(normalize_label(label) for label in labels)
        if atoms:
            values.setdefault(triple.predicate, set()).update(atoms)
    return {prop: frozenset(atoms) for prop, atoms in values.items()}


@dataclass
class KeyRanking:
    entries: list[tuple[Iri, float]]  # sorted by descending discriminativity

    def top_shared(self, values_a: dict[Iri, frozenset], values_b: dict[Iri, frozenset]):
        for prop, _score in self.entries:
            if prop in values_a and prop in values_b:
                return prop
        return None


def rank_keys(members: list[Iri], profile_values: dict[Iri, dict[Iri, frozenset]]) -> KeyRanking:
    """Score every property seen on the cluster's members."""
    total = len(members)
    properties = sorted(
        {prop for member in members for prop in profile_values.get(member, {})},
        key=lambda p: p.value,
    )
    scored = []
    for prop in properties:
        holders = [m for m in members if prop in profile_values.get(m, {})]
        if not holders:
            continue
        distinct = len({profile_values[m][prop] for m in holders})
        score = (distinct / len(holders)) * (len(holders) / total)
        scored.append((prop, score))
    scored.sort(key=lambda item: (-item[1], item[0].value))
    return KeyRanking(scored)


def values_agree(atoms_a: frozenset, atoms_b: frozenset) -> bool:
    return bool(atoms_a & atoms_b)


def disambiguate(
    members: list[Iri],
    ranking: KeyRanking,
    profile_values: dict[Iri, dict[Iri, frozenset]],
    sources: set[Iri],
    targets: set[Iri],
) -> set[tuple[Iri, Iri]]:
    """Cross-dataset pairs within a cluster whose top shared key agrees.

    Pairs with no shared key stay unresolved and produce no link;
    precision wins over recall here.
    """
    links: set[tuple[Iri, Iri]] = set()
    for source in members:
        if source not in sources:
            continue
        for target in members:
            if target not in targets:
                continue
            va = profile_values.get(source, {})
            vb = profile_values.get(target, {})
            key = ranking.top_shared(va, vb)
            if key is None:
                continue
            if values_agree(va[key], vb[key]):
                links.add((source, target))
    return links
