"""Acceptability of non-conventional glyphs.

Expert writers accept an invented glyph when it is coherent with the
rest of the system, useful (not a lookalike of something official),
and legible. Those community norms are operationalized here as a
configurable rule set with shipped defaults; the numeric thresholds
are this artifact's calibration, not community doctrine.

Redundancy (the utility check) only ever warns: a redundant but
clearer glyph is routinely accepted in practice, so the verdict
suggests the official neighbor instead of rejecting.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass

from . import geometry as geo
from .document import GLYPH_BOX, SignDocument, glyph_box_size, registry_resolver
from .sketch import rasterize_frame

PASS, WARN, FAIL = "pass", "warn", "fail"
_SEVERITY = {PASS: 0, WARN: 1, FAIL: 2}


def worst(*statuses: str) -> str:
    return max(statuses, key=_SEVERITY.__getitem__, default=PASS)


@dataclass(frozen=True)
class RuleDiagnostic:
    rule: str
    message: str
    measured: float | None = None
    threshold: float | None = None


@dataclass(frozen=True)
class CheckResult:
    status: str
    diagnostics: tuple[RuleDiagnostic, ...] = ()
    suggestion: str | None = None    # nearest official ref, utility only

    def to_json(self) -> dict:
        out = {"status": self.status,
               "diagnostics": [vars(d) for d in self.diagnostics]}
        if self.suggestion is not None:
            out["suggestion"] = self.suggestion
        return out


@dataclass(frozen=True)
class Verdict:
    coherence: CheckResult
    utility: CheckResult
    legibility: CheckResult

    @property
    def overall(self) -> str:
        return worst(self.coherence.status, self.utility.status,
                     self.legibility.status)

    def to_json(self) -> dict:
        return {
            "overall": self.overall,
            "coherence": self.coherence.to_json(),
            "utility": self.utility.to_json(),
            "legibility": self.legibility.to_json(),
        }


@dataclass(frozen=True)
class CoherenceRule:
    rule_id: str
    tag: str                 # rule applies to entries carrying this tag
    predicate: str           # horizontal-bar | above-anchor
    params: tuple[tuple[str, str], ...] = ()

    def param(self, name: str, default: float) -> float:
        for key, value in self.params:
            if key == name:
                return float(value)
        return default

    def param_str(self, name: str, default: str) -> str:
        for key, value in self.params:
            if key == name:
                return value
        return default


DEFAULT_RULES = (
    # Forearm involvement is written as a bar through the glyph.
    CoherenceRule("forearm-bar", "forearm", "horizontal-bar",
                  (("min_span", "0.9"), ("max_dev", "0.06"))),
    # Head movements sit on top of the circle that stands for the face.
    CoherenceRule("head-above-face", "head-movement", "above-anchor",
                  (("anchor_tag", "face-circle"),)),
)


@dataclass(frozen=True)
class RuleSet:
    coherence_rules: tuple[CoherenceRule, ...] = DEFAULT_RULES
    redundancy_distance: float = 0.35   # descriptor distance below which
                                        # a glyph is "already official"
    min_stroke_separation: float = 2.0  # render units, at standard size
    max_ink_density: float = 0.5

    def __post_init__(self):
        if self.redundancy_distance <= 0:
            raise ValueError("redundancy distance must be positive")
        if self.min_stroke_separation < 1:
            raise ValueError("minimum stroke separation must be >= 1")
        if not 0 < self.max_ink_density <= 1:
            raise ValueError("ink density cap must be in (0, 1]")


def parse_ruleset(text: str) -> RuleSet:
    """Rule configuration, one statement per line::

        rule <id> tag=<tag> predicate=<name> [param=value ...]
        utility tau=<distance>
        legibility s_min=<units> d_max=<ratio>
    """
    rules: list[CoherenceRule] = []
    tau, s_min, d_max = None, None, None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tokens = shlex.split(line)
            kind = tokens[0]
            kv = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
            if kind == "rule":
                extras = tuple((k, v) for k, v in kv.items()
                               if k not in ("tag", "predicate"))
                rules.append(CoherenceRule(tokens[1], kv["tag"],
                                           kv["predicate"], extras))
            elif kind == "utility":
                tau = float(kv["tau"])
            elif kind == "legibility":
                s_min = float(kv.get("s_min", 2.0))
                d_max = float(kv.get("d_max", 0.5))
            else:
                raise ValueError(f"unknown statement {kind!r}")
        except (KeyError, IndexError, ValueError) as exc:
            raise ValueError(f"rule config line {lineno}: {exc}") from None
    base = RuleSet()
    return RuleSet(
        coherence_rules=tuple(rules) or base.coherence_rules,
        redundancy_distance=tau if tau is not None else base.redundancy_distance,
        min_stroke_separation=s_min if s_min is not None else base.min_stroke_separation,
        max_ink_density=d_max if d_max is not None else base.max_ink_density,
    )


@dataclass(frozen=True)
class PlacementContext:
    """Where a glyph sits in a sign, for placement-sensitive rules."""

    doc: SignDocument
    z: int                    # the candidate's placement
    registry: object = None
    store: object = None

    def candidate_box(self) -> tuple[int, int, int, int]:
        g = self.doc.by_z(self.z)
        geometry = g.geometry
        if geometry is None:
            geometry = registry_resolver(self.registry, self.store)(g.ref)
        w, h = glyph_box_size(geometry)
        return (g.x, g.y, w, h)

    def neighbor_boxes_with_tag(self, tag: str):
        resolve = registry_resolver(self.registry, self.store)
        boxes = []
        for g in self.doc.glyphs:
            if g.z == self.z:
                continue
            tags: frozenset = frozenset()
            if self.registry is not None and g.ref in self.registry:
                tags = self.registry.entry(g.ref).feature_tags
            elif self.store is not None:
                record = self.store.get_user_glyph(g.ref)
                if record is not None:
                    tags = record.tags
            if tag not in tags:
                continue
            geometry = g.geometry if g.geometry is not None else resolve(g.ref)
            if geometry is None:
                continue
            w, h = glyph_box_size(geometry)
            boxes.append((g.x, g.y, w, h))
        return boxes


def _has_horizontal_bar(geometry, min_span: float, max_dev: float) -> bool:
    minx, _, maxx, _ = geo.bounds(geometry)
    width = maxx - minx
    if width <= 0:
        return False
    for stroke in geometry:
        ys = [y for _, y in stroke]
        xs = [x for x, _ in stroke]
        if max(ys) - min(ys) <= max_dev and max(xs) - min(xs) >= min_span * width:
            return True
    return False


def _is_above(candidate, anchor) -> bool:
    cx, cy, cw, ch = candidate
    ax, ay, aw, _ = anchor
    overlaps = cx < ax + aw and ax < cx + cw
    return overlaps and cy + ch <= ay


def check_coherence(entry, context: PlacementContext | None = None,
                    rules: RuleSet | None = None) -> CheckResult:
    """Structural and placement rules gated on the entry's tags.

    Placement rules only fire when a placement context is given;
    evaluating a bare, unplaced glyph checks structure alone.
    """
    rules = rules or RuleSet()
    diagnostics = []
    for rule in rules.coherence_rules:
        if rule.tag not in entry.feature_tags:
            continue
        if rule.predicate == "horizontal-bar":
            if not _has_horizontal_bar(entry.geometry,
                                       rule.param("min_span", 0.9),
                                       rule.param("max_dev", 0.06)):
                diagnostics.append(RuleDiagnostic(
                    rule.rule_id,
                    f"glyphs tagged {rule.tag!r} must be crossed by a "
                    "full-width horizontal bar"))
        elif rule.predicate == "above-anchor":
            if context is None:
                continue
            anchor_tag = rule.param_str("anchor_tag", "face-circle")
            anchors = context.neighbor_boxes_with_tag(anchor_tag)
            if not anchors:
                diagnostics.append(RuleDiagnostic(
                    rule.rule_id,
                    f"no {anchor_tag!r} glyph in the sign to anchor to"))
            elif not any(_is_above(context.candidate_box(), a) for a in anchors):
                diagnostics.append(RuleDiagnostic(
                    rule.rule_id,
                    f"glyphs tagged {rule.tag!r} must sit directly above "
                    f"a {anchor_tag!r} glyph"))
        else:
            diagnostics.append(RuleDiagnostic(
                rule.rule_id, f"unknown predicate {rule.predicate!r}"))
    status = FAIL if diagnostics else PASS
    return CheckResult(status, tuple(diagnostics))


def check_utility(entry, form_index, rules: RuleSet | None = None) -> CheckResult:
    """Distance to the nearest official form; close means redundant.

    Redundant glyphs warn and carry the official neighbor as a
    suggestion - they are never hard-rejected.
    """
    rules = rules or RuleSet()
    if form_index is None or len(form_index) == 0:
        return CheckResult(PASS, (RuleDiagnostic(
            "utility", "no official forms to compare against"),))
    [(ref, distance)] = form_index.match(entry.geometry, k=1)
    if distance < rules.redundancy_distance:
        return CheckResult(
            WARN,
            (RuleDiagnostic("utility",
                            f"shape is redundant with official glyph {ref}",
                            measured=distance,
                            threshold=rules.redundancy_distance),),
            suggestion=ref)
    return CheckResult(PASS, (RuleDiagnostic(
        "utility", f"nearest official glyph is {ref}",
        measured=distance, threshold=rules.redundancy_distance),))


def check_legibility(entry, render_size: int = GLYPH_BOX,
                     rules: RuleSet | None = None) -> CheckResult:
    """Ink density and stroke crowding at the standard display size.

    Distinct strokes that come close without actually touching are
    crowding; strokes that intersect are considered joined by design.
    """
    rules = rules or RuleSet()
    diagnostics = []
    bitmap = rasterize_frame(entry.geometry, render_size)
    density = float(bitmap.mean())
    if density > rules.max_ink_density:
        diagnostics.append(RuleDiagnostic(
            "legibility-density", "too much ink to read at display size",
            measured=density, threshold=rules.max_ink_density))
    scaled = geo.scale(entry.geometry, render_size)
    for i in range(len(scaled)):
        for j in range(i + 1, len(scaled)):
            d = geo.stroke_distance(scaled[i], scaled[j])
            if 0 < d < rules.min_stroke_separation:
                diagnostics.append(RuleDiagnostic(
                    "legibility-separation",
                    f"strokes {i} and {j} nearly touch",
                    measured=d, threshold=rules.min_stroke_separation))
    status = FAIL if diagnostics else PASS
    return CheckResult(status, tuple(diagnostics))


def evaluate(entry, context: PlacementContext | None = None,
             form_index=None, rules: RuleSet | None = None) -> Verdict:
    """Aggregate verdict; overall is the worst of the three checks."""
    rules = rules or RuleSet()
    return Verdict(
        coherence=check_coherence(entry, context, rules),
        utility=check_utility(entry, form_index, rules),
        legibility=check_legibility(entry, rules=rules),
    )
