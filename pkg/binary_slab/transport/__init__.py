from binary_slab.transport.flux import FluxField, SolveDiagnostics, write_tagged_csv
from binary_slab.transport.mesh import Mesh, build_mesh, uniform_edges
from binary_slab.transport.quadrature import Quadrature, gauss_legendre
from binary_slab.transport.solver import particle_balance, solve_fixed_source
from binary_slab.transport.sweep import SweepResult, sweep

__all__ = [
    "FluxField",
    "Mesh",
    "Quadrature",
    "SolveDiagnostics",
    "SweepResult",
    "build_mesh",
    "gauss_legendre",
    "particle_balance",
    "solve_fixed_source",
    "sweep",
    "uniform_edges",
    "write_tagged_csv",
]
