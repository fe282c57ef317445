"""Reflexive-transitive closure of finite relations, computed several ways.

The submodules are:

* :mod:`rtclosure.relation` -- finite relations as bit rows, and closures
  by powers, by intersection of closed supersets, and by hereditary subsets.
* :mod:`rtclosure.derivation` -- proof trees for reachability judgments,
  a checker, proof search, and the cut/(in) elimination transforms.
* :mod:`rtclosure.lattice` -- closure operators, Moore families and least
  fixed points on finite powersets.
* :mod:`rtclosure.quantale` -- star in unital quantales (relations and
  length-bounded languages).
* :mod:`rtclosure.path_algebra` -- semiring matrices, Warshall and
  Floyd-Warshall.
* :mod:`rtclosure.cli` -- the ``rtclosure`` command.
"""

from rtclosure.relation import (
    Relation,
    Subset,
    Universe,
    closure_by_hereditary,
    closure_by_intersection,
    closure_by_powers,
)

__all__ = [
    "Relation",
    "Subset",
    "Universe",
    "closure_by_hereditary",
    "closure_by_intersection",
    "closure_by_powers",
]

__version__ = "0.1.0"
