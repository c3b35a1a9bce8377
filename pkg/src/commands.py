"""Subcommands of the command-line interface."""
import logging
from abc import ABC, abstractmethod
from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, Optional, Type

from config.settings import (
    DEFAULT_SEED,
    FORM_BOUND,
    IDENTITY_TRIALS,
    MATCHING_BOUND,
    MEANDER_BOUND,
    TL_BOUND,
)
from src.algebra import CircularQuadruple, pairing_radical, validate_quadruple
from src.circular_forms import CircularForm, circles_of, enumerate_circular_forms, forest_of, parse_form, spherical_canonical
from src.diagrams import DecoratedDiagram
from src.errors import CircleCalcError, DiagramValidationError, RefusalError
from src.evaluation import (
    EvalContext,
    alpha,
    eval_decorated_closed,
    pair_general,
    pair_spherical,
    series_coefficients,
)
from src.fixtures import load_quadruple, quadruple_to_dict
from src.gram import (
    default_mode,
    gram_blocks,
    gram_matrix,
    parse_sequence,
    skein_hom_dim,
    state_dim,
)
from src.matchings import catalan, enumerate_matchings, enumerate_outer_matchings
from src.meander import meander_check
from src.parsing import load_diagram, parse_diagram, print_diagram
from src.scalars import format_scalar
from src.tables import generic_nondegeneracy_experiment, table_verify
from src.temperley_lieb import tl_algebra

logger = logging.getLogger(__name__)


def read_diagram(arg: str):
    """A diagram given inline (JSON or form literal) or as a file path."""
    if arg.lstrip().startswith('{') or not Path(arg).is_file():
        return parse_diagram(arg)
    return load_diagram(arg)


def quadruple_params(args: Namespace) -> Dict[str, str]:
    """Parameter values from --d and --param NAME=VALUE."""
    params = {}
    if getattr(args, 'd', None) is not None:
        params['d'] = args.d
    for item in getattr(args, 'param', None) or []:
        if '=' not in item:
            raise DiagramValidationError(f"--param expects NAME=VALUE, got {item!r}")
        name, value = item.split('=', 1)
        params[name.strip()] = value.strip()
    return params


class Command(ABC):
    """
    Base class for subcommands.

    run() returns a payload with 'data' and optionally 'ok' (False marks a
    failed check), 'summary' and 'table'; execute() wraps it into a result
    dict with status and exit code.
    """

    name = 'command'

    def __init__(self, args: Namespace):
        self.args = args

    @property
    def tag(self) -> str:
        return f"[{self.name.upper()}]"

    def quadruple(self, required: bool = True) -> Optional[CircularQuadruple]:
        path = getattr(self.args, 'quadruple', None)
        if not path:
            if required:
                raise DiagramValidationError(f"{self.name} needs --quadruple")
            return None
        return load_quadruple(path, quadruple_params(self.args))

    def bound(self, default: int) -> int:
        return self.args.bound if getattr(self.args, 'bound', None) is not None else default

    @abstractmethod
    def run(self) -> Dict[str, Any]:
        """Compute the payload of the subcommand."""
        pass

    def execute(self) -> Dict[str, Any]:
        """Run the subcommand and convert library errors into a failed result."""
        try:
            logger.info(f"{self.tag} Running {self.name}")
            payload = self.run()
            ok = payload.pop('ok', True)
            status = 'success' if ok else 'failed'
            if not ok:
                logger.error(f"{self.tag} Checks failed")
            return {'command': self.name, 'status': status, 'exit_code': 0 if ok else 1, **payload}
        except CircleCalcError as e:
            logger.error(f"{self.tag} Failed: {e}")
            return {'command': self.name, 'status': 'failed', 'error': str(e), 'exit_code': e.exit_code}


class EnumerateCommand(Command):
    """Circular forms with n circles, crossingless matchings or outer matchings of 2n points."""

    name = 'enumerate'

    def run(self) -> Dict[str, Any]:
        what, n = self.args.what, self.args.n
        if what == 'forms':
            items = [u.encoding or '∅' for u in enumerate_circular_forms(n, self.bound(FORM_BOUND))]
        elif what == 'matchings':
            items = [str(m) for m in enumerate_matchings(n, bound=self.bound(MATCHING_BOUND))]
        else:
            items = [str(y) for y in enumerate_outer_matchings(n, bound=self.bound(MATCHING_BOUND))]
        logger.info(f"Enumerated {len(items)} {what} for n={n}")
        return {
            'data': {'what': what, 'n': n, 'count': len(items), 'items': items},
            'summary': {'what': what, 'n': n, 'count': len(items)},
            'table': (['index', 'item'], [{'index': i + 1, 'item': s} for i, s in enumerate(items)]),
        }


class CanonCommand(Command):
    """Canonical and spherical canonical encodings of a circular form, with its forest."""

    name = 'canon'

    def run(self) -> Dict[str, Any]:
        if self.args.form is None:
            raise DiagramValidationError("canon needs --form")
        u = parse_form(self.args.form)
        trees = [CircularForm((circles_of(tree.children),)).encoding for tree in forest_of(u)]
        data = {
            'input': self.args.form,
            'canonical': u.encoding,
            'spherical_canonical': spherical_canonical(u).encoding,
            'circles': u.circle_count,
            'forest': trees,
            'tree_sizes': [t.size for t in forest_of(u)],
        }
        return {'data': data, 'summary': data}


class EvalCommand(Command):
    """Value in Z and trace of a closed diagram."""

    name = 'eval'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        if self.args.form is not None:
            u = parse_form(self.args.form)
        elif self.args.diagram:
            u = read_diagram(self.args.diagram[0])
        else:
            raise DiagramValidationError("eval needs --form or --diagram")
        ctx = EvalContext(q)
        value = eval_decorated_closed(u, ctx)
        data = {
            'quadruple': q.name,
            'diagram': print_diagram(u),
            'value': q.format_element(value),
            'alpha': format_scalar(q.domain, alpha(u, ctx)),
        }
        return {'data': data, 'summary': data}


class PairCommand(Command):
    """Pairing of two diagrams (spherical: two disk diagrams; general: disk with outer)."""

    name = 'pair'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        paths = self.args.diagram or []
        if len(paths) != 2:
            raise DiagramValidationError("pair needs exactly two --diagram arguments")
        x, y = (read_diagram(p) for p in paths)
        if not isinstance(x, DecoratedDiagram) or not isinstance(y, DecoratedDiagram):
            raise DiagramValidationError("pair needs diagrams with boundary, not circular forms")
        mode = self.args.mode or ('general' if y.is_outer else 'spherical')
        ctx = EvalContext(q)
        value = pair_general(x, y, ctx) if mode == 'general' else pair_spherical(x, y, ctx)
        data = {'quadruple': q.name, 'mode': mode, 'left': print_diagram(x), 'right': print_diagram(y),
                'value': format_scalar(q.domain, value)}
        return {'data': data, 'summary': data}


class GramCommand(Command):
    """Gram matrix of the disk spanning set, or its block decomposition."""

    name = 'gram'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        k, jobs = self.args.n, self.args.jobs
        if self.args.blocks or self.args.seq:
            sequences = [parse_sequence(s) for s in self.args.seq] if self.args.seq else None
            blocks = gram_blocks(k, q, jobs, sequences)
            rows = [dict(seq=seq, size=r.shape[0], rank=r.rank,
                         det=None if r.determinant is None else format_scalar(q.domain, r.determinant))
                    for seq, r in blocks.blocks.items()]
            return {
                'data': blocks.to_dict(include_matrix=self.args.matrix),
                'summary': {'quadruple': q.name, 'k': k, 'total_items': blocks.total_items,
                            'cross_block_verified': blocks.cross_block_verified},
                'table': (['seq', 'size', 'rank', 'det'], rows),
            }
        mode = self.args.mode or default_mode(q)
        report = gram_matrix(k, q, mode, jobs)
        data = dict(quadruple=q.name, k=k, mode=mode, symmetric=report.is_symmetric() if report.is_square else None,
                    **report.to_dict(include_matrix=self.args.matrix))
        summary = {key: v for key, v in data.items() if key not in ('matrix', 'row_index', 'col_index')}
        return {'data': data, 'summary': summary}


class StateSpaceCommand(Command):
    """Dimensions of A(k) for k = 0..n."""

    name = 'statespace'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        mode = self.args.mode or default_mode(q)
        rows = []
        for k in range(self.args.n + 1):
            rows.append({
                'k': k,
                'dim': state_dim(k, q, mode, self.args.jobs),
                'skein_dim': skein_hom_dim(0, 2 * k, q),
                'catalan': catalan(k),
            })
        return {
            'data': {'quadruple': q.name, 'mode': mode, 'dims': rows},
            'summary': {'quadruple': q.name, 'mode': mode},
            'table': (['k', 'dim', 'skein_dim', 'catalan'], rows),
        }


class TLCommand(Command):
    """Structure constants of End(n)."""

    name = 'tl'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        tl = tl_algebra(self.args.n, q, self.args.mode, self.args.jobs, self.bound(TL_BOUND))
        data = tl.to_dict()
        summary = {key: data[key] for key in ('n', 'quadruple', 'mode', 'dim', 'spanning_size', 'associative', 'unital')}
        rows = [{'index': i + 1, 'diagram': name} for i, name in enumerate(data['basis'])]
        return {'data': data, 'ok': tl.associative and tl.unital, 'summary': summary,
                'table': (['index', 'diagram'], rows)}


class MeanderCommand(Command):
    name = 'meander'

    def run(self) -> Dict[str, Any]:
        reports = meander_check(self.args.n, self.bound(MEANDER_BOUND))
        rows = [r.to_dict() for r in reports]
        return {
            'data': {'reports': rows},
            'ok': all(r.ok for r in reports),
            'table': (['n', 'size', 'chebyshev_match', 'rank_at_3', 'rank_at_2', 'rank_at_-2', 'ok', 'det'], rows),
        }


class TablesCommand(Command):
    """Check the printed Gram block determinants for one order n."""

    name = 'tables'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple(required=False)
        seed = self.args.seed if self.args.seed is not None else DEFAULT_SEED
        trials = self.args.trials or IDENTITY_TRIALS
        report = table_verify(self.args.n, q, seed, trials, self.args.jobs)
        data = report.to_dict()
        return {
            'data': data,
            'ok': report.ok,
            'summary': {'n': report.n, 'quadruple': report.quadruple, 'seed': seed, 'trials': trials},
            'table': (['label', 'seq', 'size', 'expected_size', 'match_paper', 'status', 'det'], data['blocks']),
        }


class ExperimentCommand(Command):
    """Generic nondegeneracy of semisimple spherical quadruples at random points."""

    name = 'experiment'

    def run(self) -> Dict[str, Any]:
        seed = self.args.seed if self.args.seed is not None else DEFAULT_SEED
        report = generic_nondegeneracy_experiment(self.args.k_dim, self.args.n, seed, self.args.points,
                                                  self.args.decoupled, not self.args.no_scan, self.args.jobs)
        data = report.to_dict()
        rows = [dict(point=i, **r) for i, p in enumerate(data['points']) for r in p['ranks']]
        return {
            'data': data,
            'summary': {'k_dim': report.k_dim, 'n_max': report.n_max, 'seed': seed, 'full_rank': report.full_rank},
            'table': (['point', 'n', 'size', 'rank', 'full_rank'], rows),
        }


class ValidateCommand(Command):
    name = 'validate'

    def run(self) -> Dict[str, Any]:
        report = validate_quadruple(self.quadruple())
        data = report.to_dict()
        return {'data': data, 'ok': report.valid, 'summary': dict(quadruple=report.name, valid=report.valid, **report.checks)}


class RecognizeCommand(Command):
    """Omega-generated subalgebra, pairing radical and dim A(0)."""

    name = 'recognize'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        radical = pairing_radical(q)
        data = {
            'quadruple': q.name,
            'dim_Z': q.dim,
            'dim_Z_prime': radical.subalgebra.dim,
            'omega_generated': radical.subalgebra.surjective,
            'dim_K': radical.kernel_dim,
            'dim_A0': radical.a0_dim,
            'rounds': radical.rounds,
            'kernel_basis': [q.format_element(v) for v in radical.kernel_basis],
            'minimal': quadruple_to_dict(radical.minimal) if radical.minimal is not None else None,
        }
        summary = {key: v for key, v in data.items() if key not in ('kernel_basis', 'minimal')}
        return {'data': data, 'summary': summary}


class SeriesCommand(Command):
    """Coefficients alpha(u) of the circular series up to n circles."""

    name = 'series'

    def run(self) -> Dict[str, Any]:
        q = self.quadruple()
        terms = series_coefficients(q, self.args.n)
        rows = [{'form': t.encoding or '∅', 'circles': t.circles, 'forest': list(t.forest_sizes),
                 'alpha': format_scalar(q.domain, t.value)} for t in terms]
        return {'data': {'quadruple': q.name, 'terms': rows}, 'table': (['form', 'circles', 'forest', 'alpha'], rows)}


COMMANDS: Dict[str, Type[Command]] = {
    cls.name: cls for cls in (
        EnumerateCommand, CanonCommand, EvalCommand, PairCommand, GramCommand, StateSpaceCommand,
        TLCommand, MeanderCommand, TablesCommand, ExperimentCommand, ValidateCommand, RecognizeCommand,
        SeriesCommand,
    )
}


def dispatch(args: Namespace) -> Dict[str, Any]:
    """
    Run the subcommand named by args.command.

    Returns:
        result dict with command, status, exit_code and payload
    """
    command = COMMANDS.get(args.command)
    if command is None:
        logger.error(f"Unknown subcommand: {args.command}")
        return {'command': args.command, 'status': 'failed', 'error': f"unknown subcommand {args.command!r}",
                'exit_code': RefusalError.exit_code}
    return command(args).execute()
