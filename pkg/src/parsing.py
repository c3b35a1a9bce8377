"""
Text and JSON forms of circle diagrams.

Circular forms are balanced-parenthesis strings. Matchings and decorated
diagrams are JSON objects:

    {"k": 2, "split": [0, 4], "arcs": [[1, 2], [3, 4]],
     "regions": {"1": [{"form": "(())"}, {"elem": [0, 1]}]}}

Region keys name any boundary segment (1..2k) of the region; an outer
diagram adds "infinity_face", also given by a segment. Contents are
{"form": str}, {"elem": [coords]}, {"basis": i} (1-based) or
{"loop": [contents]}.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Union

from src.circular_forms import CircularForm, parse_form
from src.diagrams import Content, DecoratedDiagram, ElemContent, FormContent, LoopContent
from src.errors import DiagramSyntaxError, DiagramValidationError
from src.matchings import Matching, OuterMatching

logger = logging.getLogger(__name__)

Parsed = Union[CircularForm, DecoratedDiagram]


def _segment_region(arcs, key: Any, what: str) -> int:
    try:
        segment = int(key)
    except (TypeError, ValueError):
        raise DiagramValidationError(f"{what} {key!r} is not a segment number")
    if arcs.k == 0:
        if segment not in (0, 1):
            raise DiagramValidationError(f"{what} {segment}: a closed diagram has the single region 0")
        return 0
    if not 1 <= segment <= arcs.size:
        raise DiagramValidationError(f"{what} {segment} outside 1..{arcs.size}")
    return arcs.region_of_segment(segment)


def parse_content(obj: Mapping[str, Any]) -> Content:
    """
    Raises:
        DiagramValidationError: for unknown content kinds or bad basis indices
    """
    if not isinstance(obj, Mapping) or len(obj) != 1:
        raise DiagramValidationError(f"content must be a single-key object, got {obj!r}")
    kind, value = next(iter(obj.items()))
    if kind == 'form':
        return FormContent(parse_form(str(value)))
    if kind == 'elem':
        return ElemContent(coords=tuple(str(c) for c in value))
    if kind == 'basis':
        index = int(value)
        if index < 1:
            raise DiagramValidationError(f"basis index {index} must be at least 1")
        return ElemContent(basis=index - 1)
    if kind == 'loop':
        return LoopContent(tuple(parse_content(c) for c in value))
    raise DiagramValidationError(f"unknown content kind {kind!r}")


def diagram_from_dict(data: Mapping[str, Any]) -> DecoratedDiagram:
    """
    Build a decorated disk or outer diagram from its JSON object.

    Raises:
        DiagramValidationError: crossing arcs, bad split, bad region or infinity face
    """
    if 'k' not in data:
        raise DiagramValidationError("diagram object needs 'k'")
    k = int(data['k'])
    arcs = tuple(tuple(int(p) for p in arc) for arc in data.get('arcs', []))
    if len(arcs) != k:
        raise DiagramValidationError(f"{len(arcs)} arcs given for k={k}")
    points = sorted(p for arc in arcs for p in arc)
    if points != list(range(1, 2 * k + 1)):
        raise DiagramValidationError(f"arcs must pair every point 1..{2 * k} exactly once")

    if 'infinity_face' in data:
        probe = OuterMatching(k, arcs, 0 if k == 0 else 1)
        matching = OuterMatching(k, arcs, _segment_region(probe, data['infinity_face'], 'infinity_face'))
    else:
        matching = Matching(k, arcs, tuple(data.get('split', (0, 2 * k))))

    regions: Dict[int, List[Content]] = {}
    for key, contents in (data.get('regions') or {}).items():
        region = _segment_region(matching, key, 'region')
        if not isinstance(contents, list):
            contents = [contents]
        regions.setdefault(region, []).extend(parse_content(c) for c in contents)
    return DecoratedDiagram(matching, regions)


def parse_diagram(text: str) -> Parsed:
    """
    Parse a form literal or a diagram JSON string.

    Raises:
        DiagramSyntaxError: malformed JSON or parentheses, with the offset
        DiagramValidationError: structurally invalid diagram data
    """
    stripped = text.strip()
    if stripped.startswith('{'):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise DiagramSyntaxError(f"invalid diagram JSON: {e.msg}", e.pos)
        return diagram_from_dict(data)
    return parse_form(stripped)


def load_diagram(path: Union[str, Path]) -> Parsed:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_diagram(f.read())


def content_to_json(content: Content) -> Dict[str, Any]:
    if isinstance(content, FormContent):
        return {'form': content.form.encoding}
    if isinstance(content, ElemContent):
        if content.basis is not None:
            return {'basis': content.basis + 1}
        return {'elem': list(content.coords)}
    return {'loop': [content_to_json(c) for c in content.inner]}


def diagram_to_dict(x: DecoratedDiagram) -> Dict[str, Any]:
    m = x.matching
    data: Dict[str, Any] = {'k': m.k}
    if isinstance(m, Matching):
        data['split'] = list(m.split)
    data['arcs'] = [list(arc) for arc in m.arcs]
    if isinstance(m, OuterMatching):
        data['infinity_face'] = m.infinity_face
    if x.regions:
        data['regions'] = {str(r): [content_to_json(c) for c in contents] for r, contents in x.regions}
    return data


def print_diagram(x: Parsed) -> str:
    """Inverse of parse_diagram on canonical values."""
    if isinstance(x, CircularForm):
        return x.encoding
    return json.dumps(diagram_to_dict(x), sort_keys=False)
