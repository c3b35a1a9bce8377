"""Rendering of command results as JSON or aligned text tables."""
import json
from typing import Any, Dict, List, Sequence

FORMATS = ('json', 'table')


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _cell(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (list, tuple)):
        return ' '.join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def format_table(columns: Sequence[str], rows: Sequence[Dict[str, Any]]) -> str:
    """Left-aligned columns separated by two spaces, with a header rule."""
    cells = [[_cell(row.get(col)) for col in columns] for row in rows]
    widths = [max([len(col)] + [len(r[i]) for r in cells]) for i, col in enumerate(columns)]
    lines = ['  '.join(col.ljust(w) for col, w in zip(columns, widths)).rstrip()]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)
    return '\n'.join(lines)


def format_mapping(data: Dict[str, Any]) -> str:
    width = max((len(k) for k in data), default=0)
    return '\n'.join(f"{k.ljust(width)}  {_cell(v)}" for k, v in data.items())


def render(result: Dict[str, Any], fmt: str = 'json') -> str:
    """
    Text for stdout.

    A result carries 'data' (any JSON value) and optionally 'table', a
    (columns, rows) pair used by the table format, and 'summary', a flat
    mapping printed above the table.
    """
    if fmt == 'json':
        payload = {'command': result.get('command'), 'status': result.get('status')}
        if 'error' in result:
            payload['error'] = result['error']
        if 'data' in result:
            payload['data'] = result['data']
        return to_json(payload)

    parts: List[str] = []
    if 'error' in result:
        parts.append(f"error: {result['error']}")
    if result.get('summary'):
        parts.append(format_mapping(result['summary']))
    table = result.get('table')
    if table:
        columns, rows = table
        parts.append(format_table(columns, rows))
    elif 'data' in result and not result.get('summary'):
        parts.append(to_json(result['data']))
    return '\n\n'.join(parts)
