"""
Functions for input/output: JSON documents, schema validation, reports and DOT export.
"""

import json
import math
import os
from functools import lru_cache
from pathlib import Path

import graphviz
import jsonschema
import numpy as np
from tabulate import tabulate

from src.defs import (SCHEMA_DIR_NAME, DOT_RADIUS, FAMILY_GHZ, FAMILY_W, FAMILY_BELL, FAMILY_PRODUCT, FAMILY_MIXTURE,
                      FAMILY_GHZ_DIAGONAL, FAMILY_WERNER)
from src.exceptions import DocumentError, MismatchedPartySetError
from src.logging_utils import get_logger
from src.numerical import complex_matrix_from_pairs
from src.partitions import PartitionAntichain, make_partition, maximal_elements
from src.quantum import HilbertSpec, EnsembleTerm, WitnessedEnsemble, assemble, density_from_pure, check_witnesses
from src.simplicial import (SimplicialComplex, build_polytope, f_vector, connected_components, is_single_simplex,
                            simplex_overlaps)
from src import states
from src.dynamics import GateOp, Circuit, parse_gate_kind
from src.classify import classify_three, relloc_partition, classification_caveat, polytope_signature

# -------------------------
# Definitions
# -------------------------

SCHEMA_DIR = Path(__file__).resolve().parent.parent / SCHEMA_DIR_NAME

DOC_PARTITION = 'partition'
DOC_STATE = 'state'
DOC_CIRCUIT = 'circuit'

STATE_KEYS = ('family', 'ensemble', 'ensembles')
PARTITION_KEYS = ('partitions', 'maximal_simplices')


# -------------------------
# Files and schemas
# -------------------------

def file_check(in_string):
    """
    Check that a local input file exists.
    :param in_string: Path string.
    :return: Path, or None if absent.
    """

    path = Path(in_string)
    if path.is_file():
        return path

    get_logger().warning(f"File {in_string} does not exist")
    return None

def load_json(in_string):
    """
    Read a JSON document.
    :param in_string: Path string.
    :return: Parsed object.
    """

    path = file_check(in_string)
    if path is None:
        raise DocumentError(f"Cannot read {in_string}: no such file")

    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        error_msg = f"Malformed JSON in {in_string}: {e}"
        get_logger().error(error_msg)
        raise DocumentError(error_msg) from e

@lru_cache(maxsize=None)
def load_schema(kind):
    with open(SCHEMA_DIR / f"{kind}.json", "r") as f:
        return json.load(f)

def validate_document(obj, kind):
    """
    Validate a document against its shipped JSON schema.
    :param obj: Parsed document.
    :param kind: 'partition', 'state' or 'circuit'.
    """

    try:
        jsonschema.validate(instance=obj, schema=load_schema(kind))
    except jsonschema.ValidationError as e:
        error_msg = f"{kind.capitalize()} document does not match its schema: {e.message}"
        get_logger().error(error_msg)
        raise DocumentError(error_msg) from e

def document_kind(obj):
    """'state' or 'partition', from the keys present."""

    if isinstance(obj, dict):
        if any(key in obj for key in STATE_KEYS):
            return DOC_STATE
        if any(key in obj for key in PARTITION_KEYS):
            return DOC_PARTITION
    raise DocumentError("Document is neither a partition nor a state document")


# -------------------------
# Party labels
# -------------------------

def _label_index(obj, n):
    """Map label -> party index; None when the document lists no labels."""

    labels = obj.get('parties')
    if labels is None:
        return None
    if len(labels) != n:
        raise MismatchedPartySetError(f"{len(labels)} party labels for {n} parties")
    return {label: i for i, label in enumerate(labels)}

def _resolve_member(member, index):
    if index is not None and member in index:
        return index[member]
    if isinstance(member, str):
        raise DocumentError(f"Unknown party label {member!r}")
    return int(member)

def _resolve_blocks(blocks, index, n):
    return make_partition([[_resolve_member(m, index) for m in block] for block in blocks], n)


# -------------------------
# Partition documents
# -------------------------

def parse_partition_doc(obj):
    """
    Antichain from a PartitionDoc. Families that are not antichains are maximalized with a warning.
    :param obj: Parsed document.
    :return: (PartitionAntichain, labels or None)
    """

    validate_document(obj, DOC_PARTITION)
    n = obj['n']
    index = _label_index(obj, n)

    if 'partitions' in obj:
        raw = obj['partitions']
    else:
        # Simplex vertices are party indices; only string members name labels.
        raw = obj['maximal_simplices']
        if index is not None:
            index = {label: i for label, i in index.items() if isinstance(label, str)}
    partitions = [_resolve_blocks(blocks, index, n) for blocks in raw]

    a = maximal_elements(partitions)
    if len(a) != len(set(partitions)):
        get_logger().warning(f"Document lists {len(set(partitions))} partitions of which {len(a)} are maximal; "
                             f"keeping the maximal ones")

    return a, obj.get('parties')


# -------------------------
# State documents
# -------------------------

def _complex_array(data, what):
    values = np.asarray(data, dtype=float)
    if values.ndim < 2 or values.shape[-1] != 2:
        raise DocumentError(f"{what} must be made of [re, im] pairs")
    return values[..., 0] + 1j * values[..., 1]

def parse_ensemble(doc, index=None):
    """
    WitnessedEnsemble from its document form. Factors are vectors (list of pairs) or matrices
    (rows of pairs), one per block in the order the blocks are listed.
    """

    spec = HilbertSpec(tuple(doc['dims']))
    blocks = [[_resolve_member(m, index) for m in block] for block in doc['partition']]
    partition = make_partition(blocks, spec.n)

    # Factors are listed in document block order; the ensemble wants canonical block order
    listed = [tuple(sorted(b)) for b in blocks]
    terms = []
    for term in doc['terms']:
        if len(term['factors']) != len(listed):
            raise DocumentError(f"{len(term['factors'])} factors for {len(listed)} blocks")
        factors = dict(zip(listed, (_complex_array(f, 'Factor') for f in term['factors'])))
        terms.append(EnsembleTerm(float(term['weight']), tuple(factors[b] for b in partition.blocks)))

    return WitnessedEnsemble(spec, partition, tuple(terms))

def _family_state(name, params, seed):
    """
    (DensityMatrix, witnesses) for a named family.
    """

    rng_seed = seed if seed is not None else params.get('seed')

    if name == FAMILY_GHZ:
        return density_from_pure(states.ghz(int(params.get('n', 3)), int(params.get('d', 2)))), []
    if name == FAMILY_W:
        return density_from_pure(states.w_state(int(params.get('n', 3)))), []
    if name == FAMILY_BELL:
        return density_from_pure(states.bell(params.get('kind', 'phi+'))), []
    if name == FAMILY_WERNER:
        return states.werner(float(params['p'])), []
    if name == FAMILY_GHZ_DIAGONAL:
        return states.ghz_diagonal_mixture(int(params.get('n', 3)), params.get('splits', []))

    if name == FAMILY_PRODUCT:
        if 'partition' in params:
            n = sum(len(block) for block in params['partition'])
            psi = states.random_pure_product(make_partition(params['partition'], n), params.get('dims'), rng_seed)
        else:
            psi = states.product(params['indices'], params.get('dims'))
        return density_from_pure(psi), []

    if name == FAMILY_MIXTURE:
        if 'partition' in params:
            n = sum(len(block) for block in params['partition'])
            spec = HilbertSpec(tuple(params.get('dims', (2,) * n)))
            witness = states.random_witnessed_ensemble(spec, make_partition(params['partition'], n),
                                                       int(params.get('terms', 3)), rng_seed)
            return assemble(witness), [witness]

        components = [_family_state(c['name'], c.get('params', {}), seed)[0] for c in params['components']]
        return states.mixture(components, [float(w) for w in params['weights']]), []

    raise DocumentError(f"Unknown state family {name!r}")

def parse_state_doc(obj, seed=None):
    """
    State and witnesses from a StateDoc.
    :param obj: Parsed document.
    :param seed: Overrides params.seed of random families.
    :return: (DensityMatrix, list of WitnessedEnsemble, labels or None)
    """

    validate_document(obj, DOC_STATE)

    try:
        if 'family' in obj:
            family = obj['family']
            rho, witnesses = _family_state(family['name'], family.get('params', {}), seed)
            index = _label_index(obj, rho.spec.n)
        else:
            docs = obj['ensembles'] if 'ensembles' in obj else [obj['ensemble']]
            index = _label_index(obj, len(docs[0]['dims']))
            witnesses = [parse_ensemble(doc, index) for doc in docs]
            rho = assemble(witnesses[0])
            check_witnesses(rho, witnesses)
    except (KeyError, TypeError, ValueError) as e:
        error_msg = f"Incomplete state document: {e}"
        get_logger().error(error_msg)
        raise DocumentError(error_msg) from e

    return rho, witnesses, obj.get('parties')


# -------------------------
# Circuit documents
# -------------------------

def parse_circuit_doc(obj):
    """Circuit from a CircuitDoc."""

    validate_document(obj, DOC_CIRCUIT)

    gates = []
    for gate in obj['gates']:
        matrix = None
        if 'matrix' in gate:
            try:
                matrix = complex_matrix_from_pairs(gate['matrix'])
            except ValueError as e:
                raise DocumentError(f"Bad gate matrix: {e}") from e
        gates.append(GateOp(tuple(gate['targets']), parse_gate_kind(gate['kind']), matrix))

    local_dims = tuple(obj['local_dims']) if 'local_dims' in obj else None
    return Circuit(obj['n'], tuple(gates), local_dims)


# -------------------------
# Reports
# -------------------------

def _simplices(k: SimplicialComplex):
    return [[list(v) for v in s] for s in k.maximal_simplices]

def _partition_list(partitions):
    return [p.to_lists() for p in partitions]

def polytope_report(a: PartitionAntichain, labels=None, profile=None):
    """
    Report on the polytope of an antichain, keys in a fixed order.
    :param a: Antichain of maximal partitions.
    :param labels: Party labels echoed in the report.
    :param profile: SeparabilityProfile when the antichain comes from a state.
    :return: dict
    """

    k = build_polytope(a)

    report = {
        'parties': list(labels) if labels is not None else list(range(a.n)),
        'n': a.n,
        'vertices': [list(v) for v in k.vertices],
        'maximal_simplices': _simplices(k),
        'f_vector': list(f_vector(k)),
        'components': connected_components(k),
        'single_simplex': is_single_simplex(k),
        'relloc': relloc_partition(a).partition.to_lists(),
    }
    if a.n == 3:
        report['class'] = str(classify_three(a))
    report['overlaps'] = [{'simplices': [[list(v) for v in s], [list(v) for v in t]], 'shared': [list(v) for v in f]}
                          for s, t, f in simplex_overlaps(k)]
    if profile is not None:
        report['unknown'] = _partition_list(profile.unknown_flags)
        report['caveat'] = classification_caveat(profile)
    return report

def classification_report(a: PartitionAntichain, labels=None, profile=None):
    """Three-party class plus polytope signature."""

    signature = polytope_signature(a)
    report = {
        'parties': list(labels) if labels is not None else list(range(a.n)),
        'class': str(classify_three(a)),
        'f_vector': list(signature.f_vector),
        'components': signature.components,
        'single_simplex': signature.single_simplex,
    }
    if profile is not None:
        report['unknown'] = _partition_list(profile.unknown_flags)
        report['caveat'] = classification_caveat(profile)
    return report

def _map_pairs(m):
    return [[list(v), list(w)] for v, w in m.vertex_map]

def evolution_report(trace, labels=None):
    """Per-step complexes, vertex maps and merges, plus the composed map."""

    steps = []
    for step in trace.steps:
        steps.append({
            'index': step.index,
            'gate': {'targets': list(step.gate.targets), 'kind': step.gate.kind.value},
            'before': _simplices(step.before),
            'after': _simplices(step.after),
            'changed': step.changed,
            'vertex_map': _map_pairs(step.map),
            'merged': [{'blocks': [list(a), list(b)], 'into': list(c)} for a, b, c in step.merged],
        })

    report = {
        'parties': list(labels) if labels is not None else list(range(trace.initial.n)),
        'n': trace.initial.n,
        'initial': _partition_list(trace.initial),
        'steps': steps,
        'composed': _map_pairs(trace.composed),
        'final': _partition_list(trace.final),
        'fixed_point_index': trace.fixed_point_index,
    }
    if trace.excluded_unknown:
        report['unknown'] = _partition_list(trace.excluded_unknown)
    return report

def dump_json(obj, indent=2):
    return json.dumps(obj, indent=indent)

def report_table(report):
    """
    Plain-text table of a report: one row per step for evolution reports, one row per field otherwise.
    """

    if isinstance(report, list):
        return '\n\n'.join(report_table(r) for r in report)

    if 'steps' in report:
        rows = [(s['index'], f"{s['gate']['kind']}{s['gate']['targets']}", json.dumps(s['before']),
                 json.dumps(s['after']), 'yes' if s['changed'] else '') for s in report['steps']]
        table = tabulate(rows, headers=['step', 'gate', 'before', 'after', 'changed'])
        return table + f"\n\nfixed point index: {report['fixed_point_index']}"

    return tabulate([(key, value if isinstance(value, (int, str)) else json.dumps(value))
                     for key, value in report.items()], headers=['field', 'value'])


# -------------------------
# DOT export
# -------------------------

def _node_id(vertex):
    return 'v' + '_'.join(map(str, vertex))

def complex_to_dot(k: SimplicialComplex, name='polytope', labels=None):
    """
    DOT source of the 1-skeleton, vertices pinned on a circle.
    :param k: SimplicialComplex
    :param name: Graph name.
    :param labels: Party labels used in vertex names.
    :return: DOT source string.
    """

    dot = graphviz.Graph(name, engine='neato')

    count = len(k.vertices)
    for i, vertex in enumerate(k.vertices):
        angle = 2 * math.pi * i / count
        members = [str(labels[m]) if labels is not None else str(m) for m in vertex]
        dot.node(_node_id(vertex), label='{' + ','.join(members) + '}',
                 pos=f"{DOT_RADIUS * math.cos(angle):.4f},{DOT_RADIUS * math.sin(angle):.4f}!")

    edges = sorted({(a, b) for s in k.maximal_simplices for i, a in enumerate(s) for b in s[i + 1:]})
    for a, b in edges:
        dot.edge(_node_id(a), _node_id(b))

    return dot.source

def write_dot(k: SimplicialComplex, path, name='polytope', labels=None):

    path = Path(path)
    os.makedirs(path.parent, exist_ok=True)
    path.write_text(complex_to_dot(k, name, labels))
    get_logger().info(f"Wrote {path}")
    return path
