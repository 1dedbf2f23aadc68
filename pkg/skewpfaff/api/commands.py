"""
Command dispatch

Each command turns decoded JSON inputs and flag values into a RunReport. Catalog rows and
arrows of the verify commands are independent, so they can fan out to a process pool; the
results are merged in label order.
"""

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..core.service_container import ServiceContainer
from ..models.jet import JetPolynomial
from ..models.interchange import ClosureRequest, CubicDocument, JetDocument, MatrixDocument, parse_document
from ..models.matrix import SkewLinMatrix
from ..models.report import LABELS, CheckResult, RunReport, piece_summary
from ..services.catalog import (
    CORE_FINGERPRINTS, ORBIT_CODIMS, SATURATED_DIMS, TANGENT_CODIMS, catalog, catalog_matrix
)
from ..services.classifier_service import fingerprint, verify_table1
from ..services.closure_service import witness_passes
from ..services.exactalg import fraction_free_determinant, span_equal
from ..services.jets import cover, first_nonzero, jet_pfaffian, leading_proportionality, truncate
from ..services.pfaffcalc import (
    entry_span, ideal_piece, laplace_pairing, linear_syzygies, pfaffian, random_skew, rank0_point,
    saturate_piece, sub_pfaffians
)
from ..services.strata_service import ARROWS, CASE3, StrataService, verify_case3
from ..services.tangent import cone_deg2, intersection_codims, table_cone, tangent_codim
from ..utils.config import Config
from ..utils.errors import InterchangeError, InvalidParameter
from ..utils.helpers import input_digest, polynomial_to_terms
from ..utils.logging import get_logger

logger = get_logger('commands')

COMMANDS: Tuple[str, ...] = (
    'classify', 'pfaffian', 'tangent', 'cone', 'closure', 'verify-tables', 'verify-strata', 'jets',
)
FROZEN_TABLES = 'tables.json'


class Timer:
    """Collects wall-clock timings per named step"""

    def __init__(self):
        self.timings: Dict[str, float] = {}

    def measure(self, name: str, fn: Callable[..., Any], *args, **kwargs) -> Any:
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start


def _matrix_input(options: Dict[str, Any]) -> Tuple[SkewLinMatrix, Optional[str]]:
    """The input matrix document, or the catalog matrix named by --type"""
    data = options.get('input')
    label = options.get('type')
    if data is not None:
        return parse_document(MatrixDocument, data).to_matrix(), None
    if label:
        return catalog_matrix(label), label
    raise InterchangeError("this command needs --input or --type")


def _fan_out(fn: Callable[..., Any], keys: Sequence[str], workers: int, *args) -> List[Any]:
    """fn(key, *args) for every key, in key order"""
    if workers <= 1 or len(keys) <= 1:
        return [fn(key, *args) for key in keys]
    logger.info(f"Fanning out {len(keys)} jobs to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, key, *args) for key in keys]
        return [future.result() for future in futures]


# classify / pfaffian / tangent / cone

def run_classify(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    m, label = _matrix_input(options)
    matrix_type = timer.measure('classify', container.get_classifier_service().classify, m)
    report.data['type'] = matrix_type.to_dict()
    report.data['fingerprint'] = fingerprint(m).to_dict()
    report.add_check('classified', True, actual=matrix_type.label)
    if label:
        report.add_check('catalog type recovered', matrix_type.label == label, expected=label, actual=matrix_type.label)


def run_pfaffian(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    m, _ = _matrix_input(options)
    value = timer.measure('pfaffian', pfaffian, m)
    q = timer.measure('sub_pfaffians', sub_pfaffians, m)
    report.data['pfaffian'] = polynomial_to_terms(value)
    report.data['sub_pfaffians'] = {f"{a},{b}": polynomial_to_terms(poly) for (a, b), poly in sorted(q.items())}
    report.data['entry_span_dim'] = entry_span(m).dim
    report.data['pfaffian_zero'] = not value
    if not value:
        syzygies = linear_syzygies(m)
        report.data['syzygies'] = syzygies.to_dict()
        report.data['sub_pfaffian_span'] = piece_summary(ideal_piece(q.values(), 2, ring=m.ring))


def run_tangent(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    m, label = _matrix_input(options)
    tangent = container.get_tangent_service()
    codim = timer.measure('tangent', tangent.codim, m)
    report.data['tangent_codim'] = codim
    report.data['orbit_codim'] = timer.measure('orbit', tangent.orbit_codim, m)
    if label:
        report.add_check('tangent codimension', codim == TANGENT_CODIMS[label],
                         expected=TANGENT_CODIMS[label], actual=codim)


def run_cone(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    m, label = _matrix_input(options)
    tangent = container.get_tangent_service()
    cone = timer.measure('cone', tangent.cone, m)
    report.data['cone'] = cone.to_dict()
    if label:
        tabulated = tangent.tabulated_cone(label)
        report.add_check('cone matches the tabulated quadrics', span_equal(cone.piece, tabulated.piece),
                         expected=tabulated.dim, actual=cone.dim)
        if label in ('c', 'e'):
            passed = timer.measure('two_jet', tangent.two_jet_check, m, label)
            report.add_check('general 2-jet lies in the saturated piece', passed)


# closure

def _cubic_input(options: Dict[str, Any]):
    data = options.get('cubic')
    if data is None:
        raise InterchangeError("closure needs a cubic: pass a closure request with --input or a cubic with --cubic")
    return parse_document(CubicDocument, data).to_polynomial()


def run_closure(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    data = options.get('input')
    if data is not None and isinstance(data, dict) and 'cubic' in data:
        request = parse_document(ClosureRequest, data)
        m, cubic = request.matrix.to_matrix(), request.cubic.to_polynomial()
    else:
        m, _ = _matrix_input(options)
        cubic = _cubic_input(options)
    verdict = timer.measure('closure', container.get_closure_service().in_closure, m, cubic)
    report.data['verdict'] = verdict.to_dict()
    if verdict.witness is not None:
        report.add_check('witness jet has Pfaffian e*c*F', witness_passes(verdict.witness, cubic))


# verify-tables

def table_row(label: str, colon_cap: int) -> Tuple[str, List[CheckResult], Dict[str, Any]]:
    """Table checks and data for one catalog type; runs in worker processes"""
    Config.COLON_CAP = colon_cap
    form = catalog(label)
    m = form.matrix
    checks = verify_table1(label)
    codim = tangent_codim(m)
    checks.append(CheckResult('tangent codimension', codim == TANGENT_CODIMS[label],
                              expected=TANGENT_CODIMS[label], actual=codim))
    cone = cone_deg2(m)
    tabulated = table_cone(label)
    checks.append(CheckResult('cone matches the tabulated quadrics', span_equal(cone.piece, tabulated.piece),
                              expected=tabulated.dim, actual=cone.dim))
    fp = fingerprint(m)
    checks.append(CheckResult('core fingerprint', fp.core() == CORE_FINGERPRINTS[label],
                              expected=list(CORE_FINGERPRINTS[label]), actual=list(fp.core())))
    data: Dict[str, Any] = {
        'type': form.type.to_dict(),
        'tag': form.tag,
        'tangent_codim': codim,
        'cone_dim': cone.dim,
        'fingerprint': list(fp.core()),
    }
    if label in SATURATED_DIMS:
        q = sub_pfaffians(m).values()
        dims = (ideal_piece(q, 3, ring=m.ring).dim, saturate_piece(q, rank0_point(m), 3).dim)
        checks.append(CheckResult('saturation removes the embedded point', dims == SATURATED_DIMS[label],
                                  expected=list(SATURATED_DIMS[label]), actual=list(dims)))
        data['saturated_dims'] = list(dims)
    return label, checks, data


def property_checks(seed: int, trials: int) -> List[CheckResult]:
    """Pf^2 = det and the Laplace identities on random rational skew matrices"""
    rng = random.Random(seed)
    squares = laplace = 0
    for _ in range(trials):
        m = random_skew(rng, 6, constant=True)
        rows = [[value.coeff(1) if value else 0 for value in row] for row in m.rows()]
        pf = pfaffian(m)
        if pf.coeff(1) ** 2 == fraction_free_determinant(rows):
            squares += 1
        if laplace_pairing(m, m) == pf * 3 and laplace_pairing(m, m, first_rows=[0]) == pf:
            laplace += 1
    return [
        CheckResult('pfaffian squared is the determinant', squares == trials, expected=trials, actual=squares),
        CheckResult('laplace identities', laplace == trials, expected=trials, actual=laplace),
    ]


def load_frozen_tables() -> Optional[Dict[str, Any]]:
    path = Config.fixture_path(FROZEN_TABLES)
    if not os.path.exists(path):
        logger.warning(f"Frozen tables not found at {path}; skipping the fixture diff")
        return None
    with open(path, 'r') as f:
        return json.load(f)


def run_verify_tables(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    labels = [options['type']] if options.get('type') else list(LABELS)
    rows = timer.measure('tables', _fan_out, table_row, labels, options['workers'], options['colon_cap'])
    tables: Dict[str, Any] = {}
    for label, checks, data in rows:
        report.extend(checks, prefix=f"({label}) ")
        tables[label] = data

    if not options.get('type'):
        codims = timer.measure('orbits', intersection_codims)
        report.add_check('orbit codimensions', codims == ORBIT_CODIMS, expected=ORBIT_CODIMS, actual=codims)
        report.data['orbit_codims'] = codims
        report.extend(timer.measure('properties', property_checks, report.seed, Config.RANDOM_TRIALS))
    report.data['tables'] = tables

    frozen = load_frozen_tables()
    if frozen is not None:
        for label, data in tables.items():
            expected = frozen.get(label, {})
            actual = {key: data.get(key) for key in expected}
            report.add_check(f"({label}) frozen fixture", expected == actual, expected=expected, actual=actual)


# verify-strata

def strata_row(arrow: str, seed: int) -> Tuple[str, List[CheckResult], Dict[str, Any]]:
    """Checks of one arrow; runs in worker processes"""
    if arrow == CASE3:
        checks, info = verify_case3(rng=random.Random(seed))
        return arrow, checks, info
    return arrow, StrataService(seed).verify(arrow), {}


def run_verify_strata(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    arrow = options.get('arrow')
    if arrow:
        if arrow != CASE3:
            container.get_strata_service().family(arrow)
        arrows = [arrow]
    else:
        arrows = list(ARROWS) + [CASE3]
    rows = timer.measure('strata', _fan_out, strata_row, arrows, options['workers'], report.seed)
    summary = {}
    for name, checks, info in rows:
        report.extend(checks, prefix=f"[{name}] ")
        summary[name] = {'passed': all(check.passed for check in checks), **info}
    report.data['arrows'] = summary


# jets

def run_jets(report: RunReport, options: Dict[str, Any], container: ServiceContainer, timer: Timer):
    data = options.get('input')
    if data is None:
        checks, info = verify_case3(rng=random.Random(report.seed))
        report.extend(checks, prefix='[case3] ')
        report.data['case3'] = info
        return
    document = parse_document(JetDocument, data)
    jet = document.to_jet()
    if document.truncate is not None:
        jet = truncate(jet, document.truncate)
    if document.cover is not None:
        jet = cover(jet, document.cover)
    if jet.order > options['jet_order']:
        jet = truncate(jet, options['jet_order'])
    value = timer.measure('jet_pfaffian', jet_pfaffian, jet)
    leading = first_nonzero(value)
    report.data['jet'] = jet.to_dict()
    report.data['jet_pfaffian'] = value.to_dict()
    report.data['first_nonzero'] = None if leading is None else {
        'order': leading[0], 'coefficient': polynomial_to_terms(leading[1]),
    }
    if options.get('cubic') is not None:
        cubic = JetPolynomial.constant(jet.ring, _cubic_input(options), jet.order)
        match = leading_proportionality(value, cubic)
        report.data['proportional'] = None if match is None else {
            'order': match[0], 'units': [str(u) for u in match[1]],
        }


HANDLERS: Dict[str, Callable[[RunReport, Dict[str, Any], ServiceContainer, Timer], None]] = {
    'classify': run_classify,
    'pfaffian': run_pfaffian,
    'tangent': run_tangent,
    'cone': run_cone,
    'closure': run_closure,
    'verify-tables': run_verify_tables,
    'verify-strata': run_verify_strata,
    'jets': run_jets,
}


def run(command: str, options: Optional[Dict[str, Any]] = None,
        container: Optional[ServiceContainer] = None) -> RunReport:
    """Run one command and return its report

    options: input / cubic (decoded JSON), type, arrow, seed, jet_order, colon_cap, workers, timings.
    """
    if command not in HANDLERS:
        raise InvalidParameter(f"unknown command '{command}', expected one of {', '.join(COMMANDS)}")
    options = dict(options or {})
    options['seed'] = Config.SEED if options.get('seed') is None else options['seed']
    options['colon_cap'] = options.get('colon_cap') or Config.COLON_CAP
    options['jet_order'] = options.get('jet_order') or Config.JET_ORDER
    options['workers'] = options.get('workers') or Config.WORKERS
    Config.COLON_CAP = options['colon_cap']
    container = container or ServiceContainer(seed=options['seed'])

    digest_source = {key: options.get(key) for key in ('input', 'cubic', 'type', 'arrow')}
    report = RunReport(
        command=command,
        seed=options['seed'],
        config=Config.get_run_config(
            seed=options['seed'], colon_cap=options['colon_cap'],
            jet_order=options['jet_order'], workers=options['workers'],
        ),
        input_digest=input_digest(digest_source),
    )
    timer = Timer()
    logger.info(f"Running {command}")
    try:
        HANDLERS[command](report, options, container, timer)
    finally:
        if options.get('timings') or Config.TIMINGS:
            report.timings = timer.timings
    logger.info(f"{command} finished: {len(report.checks)} checks, passed={report.passed}")
    return report
