"""Persistent (co)homology as graded K[t]-modules, and powers of persistence modules."""

from importlib import resources

from .complexes import (
    Filtration,
    InputError,
    PersistenceComplex,
    Simplex,
    build_persistence_complex,
    load_filtered_complex,
    parse_complex,
    parse_filtration,
    rips_filtration,
    snapshot_complex,
)
from .groups import PermGroup, burnside_count, bracelet_count, necklace_count
from .homology import (
    PersistenceModule,
    SnfResult,
    betti_at,
    graded_reduce,
    persistent_cohomology,
    persistent_homology,
    smith_normal_form,
)
from .poly import FieldSpec, Polynomial, SparsePolyMatrix, parse_poly, poly_gcd
from .powers import (
    ModuleDescriptor,
    algebra_presentation,
    cyclic_power,
    descriptor_from_module,
    dihedral_power,
    exterior_power,
    g_power,
    symmetric_power,
    tensor_power,
)

__version__ = "0.1.0"


def example_path():
    """Path to the bundled four-step example filtration on vertices a..h."""
    return resources.files(__package__) / "data" / "paper_example.flt"
