"""Open-locating-dominating sets on periodic grids: exact verification,
density search, discharging audits and cluster enumeration."""
from .lattice import Cell, LatticeSpec, ball, builtin_lattice, neighbors
from .pattern import (PeriodLattice, PeriodicPattern, PatternError, density,
                      enumerate_sublattices, parse_pattern, serialize_pattern)
from .verifier import (Verdict, check_distinguishing, check_domination, is_old_set,
                       open_code, window_oracle)
from .discharging import apply_rules, audit, classify, find_clusters
from .clusterlab import enumerate_clusters, feasible
from .search import bound_regular, search_index, search_min_density

__version__ = "0.1.0"
