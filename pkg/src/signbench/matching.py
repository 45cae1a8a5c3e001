"""Finding glyphs by form and by function.

Form search is exact nearest-neighbor over shape descriptors
(registries stay small enough that nothing cleverer is warranted);
function search walks taxonomy labels and declared tags. The two are
deliberately separate: the whole point of declared tags on user
glyphs is that a shape composed out of unrelated official parts must
NOT surface when searching by those parts' functions.
"""

from __future__ import annotations

import numpy as np

from .document import SignDocument
from .registry import Registry
from .sketch import descriptor
from .symbols import is_user_ref


class EmptyIndexError(LookupError):
    pass


class ShapeIndex:
    """Immutable descriptor table; safe for concurrent queries.

    Rebuilding means constructing a fresh index and swapping the
    reference, so readers always see a complete table.
    """

    def __init__(self, described):
        pairs = sorted(described, key=lambda p: p[0])
        self.refs: tuple[str, ...] = tuple(ref for ref, _ in pairs)
        self._matrix = (np.vstack([vec for _, vec in pairs])
                        if pairs else np.zeros((0, 0)))

    def __len__(self) -> int:
        return len(self.refs)

    def match(self, sketch_or_strokes, k: int = 1) -> list[tuple[str, float]]:
        """k nearest refs by Euclidean descriptor distance, ascending,
        ties broken by ref order. k beyond the index size just ranks
        everything."""
        if not self.refs:
            raise EmptyIndexError("no glyphs in the index")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        query = descriptor(sketch_or_strokes)
        dists = np.sqrt(((self._matrix - query) ** 2).sum(axis=1))
        # refs are pre-sorted, so a stable argsort is the tie-break
        order = np.argsort(dists, kind="stable")[:k]
        return [(self.refs[i], float(dists[i])) for i in order]


def build_index(registry: Registry, statuses=None) -> ShapeIndex:
    """Descriptor index over the registry, optionally restricted to
    some statuses (e.g. official/extension for redundancy checks)."""
    wanted = set(statuses) if statuses else None
    return ShapeIndex(
        (e.ref, descriptor(e.geometry))
        for e in registry.entries
        if wanted is None or e.status in wanted
    )


def _entry_matches(taxonomy, tags, query) -> bool:
    if isinstance(query, str):
        return query in taxonomy or query in tags
    labels = tuple(query)
    if taxonomy and labels == tuple(taxonomy[:len(labels)]):
        return True
    return set(labels) <= set(tags)


def taxonomy_search(registry: Registry, store=None, query="") -> list[str]:
    """Refs of glyphs matching a function query.

    A string matches any taxonomy label or feature tag; a sequence
    matches as a taxonomy path prefix (or, for user glyphs, as a
    subset of declared tags). User glyphs match only through what
    their authors declared.
    """
    out = [e.ref for e in registry.entries
           if _entry_matches(e.taxonomy, e.feature_tags, query)]
    if store is not None:
        out.extend(g.ref for g in store.user_glyphs()
                   if _entry_matches((), g.tags, query))
    return sorted(out)


def glyph_function_classes(ref: str, registry: Registry, store=None
                           ) -> frozenset[str]:
    """Function vocabulary of one glyph: taxonomy labels plus tags for
    cataloged refs, declared tags for user refs."""
    if is_user_ref(ref):
        record = store.get_user_glyph(ref) if store is not None else None
        return frozenset(record.tags) if record else frozenset()
    entry = registry.get(ref)
    if entry is None:
        return frozenset()
    return frozenset(entry.taxonomy) | entry.feature_tags


def sign_function_classes(doc: SignDocument, registry: Registry,
                          store=None) -> frozenset[str]:
    classes: set[str] = set()
    for g in doc.glyphs:
        classes |= glyph_function_classes(g.ref, registry, store)
    return frozenset(classes)


def corpus_query(sign_store, function_class: str) -> list[str]:
    """Ids of stored signs containing at least one glyph of the given
    function class, each id once, sorted."""
    registry = sign_store.registry
    found = []
    for sign_id, doc in sign_store.signs():
        if function_class in sign_function_classes(doc, registry, sign_store):
            found.append(sign_id)
    return sorted(found)
