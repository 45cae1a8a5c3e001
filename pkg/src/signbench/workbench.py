"""Composition root: registry + store + rules wired together.

The HTTP service and the CLI both drive this object instead of
reaching into individual modules, so the reuse policy has exactly one
enforcement point per surface (document validation here, plus the
role gate on the user-glyph palette).
"""

from __future__ import annotations

from dataclasses import dataclass

from .acceptability import RuleSet, Verdict, evaluate
from .closure import ClosureReport, closure_report
from .document import SignDocument, validate
from .geometry import Geometry, normalize_to_unit_box
from .matching import ShapeIndex, build_index, corpus_query, taxonomy_search
from .registry import Registry
from .sketch import StrokeSketch
from .store import Store, UserGlyph, ValidationRejected

ROLES = ("user", "researcher")

# Statuses whose shapes count as "already conventional" for
# redundancy checks and freehand suggestions.
CONVENTIONAL = ("official-2004", "official-2008", "extension")


class PolicyError(PermissionError):
    def __init__(self, message: str, ref: str | None = None):
        super().__init__(message)
        self.ref = ref


@dataclass(frozen=True)
class _PendingGlyph:
    """Entry-shaped view of a not-yet-stored submission, so the
    acceptability checks can run before the store assigns an id."""

    ref: str
    feature_tags: frozenset[str]
    geometry: Geometry


class Workbench:
    def __init__(self, registry: Registry, store: Store,
                 rules: RuleSet | None = None):
        self.registry = registry
        self.store = store
        self.rules = rules or RuleSet()
        self.form_index: ShapeIndex = build_index(registry, CONVENTIONAL)

    # -- form and function search ---------------------------------------

    def match(self, sketch: StrokeSketch, k: int) -> list[tuple[str, float]]:
        return self.form_index.match(sketch, k)

    def search(self, query) -> list[str]:
        return taxonomy_search(self.registry, self.store, query)

    def corpus_query(self, function_class: str) -> list[str]:
        return corpus_query(self.store, function_class)

    # -- signs ------------------------------------------------------------

    def validate_sign(self, doc: SignDocument, role: str,
                      session: str | None = None):
        return validate(doc, self.registry, self.store, role, session)

    def save_sign(self, doc: SignDocument, author: str, role: str,
                  session: str | None = None) -> str:
        return self.store.save_sign(doc, author, role, session)

    # -- user glyphs --------------------------------------------------------

    def evaluate_glyph(self, geometry: Geometry, tags,
                       context=None) -> Verdict:
        pending = _PendingGlyph("pending", frozenset(tags), geometry)
        return evaluate(pending, context, self.form_index, self.rules)

    def submit_user_glyph(self, sketch: StrokeSketch, tags, author: str,
                          session: str = "") -> tuple[UserGlyph, Verdict]:
        """Store a freehand glyph and report its acceptability.

        The glyph is stored whatever the verdict says - verdicts
        inform, they do not censor - and is immediately placeable in
        the submitting session.
        """
        geometry = normalize_to_unit_box(sketch.strokes)
        verdict = self.evaluate_glyph(geometry, tags)
        glyph = self.store.add_user_glyph(geometry, tags, author, session)
        return glyph, verdict

    def palette_user_glyph(self, ref: str, role: str,
                           session: str | None = None) -> UserGlyph:
        """Fetch a user glyph for palette insertion, enforcing the
        reuse policy: plain users only get glyphs from their own
        session. This gate is deliberately redundant with document
        validation (defense in depth)."""
        glyph = self.store.get_user_glyph(ref)
        if glyph is None:
            raise KeyError(ref)
        if role != "researcher" and glyph.session != (session or ""):
            raise PolicyError(
                f"{ref} was drawn in another session; role=user may not "
                "reuse it", ref)
        return glyph

    def list_user_glyphs(self, role: str,
                         session: str | None = None) -> list[UserGlyph]:
        return self.store.list_user_glyphs(role, session)

    # -- reports ------------------------------------------------------------

    def closure(self) -> ClosureReport:
        return closure_report(self.registry)


__all__ = ["Workbench", "PolicyError", "ValidationRejected", "ROLES",
           "CONVENTIONAL"]
