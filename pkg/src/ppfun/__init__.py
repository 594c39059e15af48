"""Computations for diagonal p-permutation functors on small permutation groups.

The package is organised as

* :mod:`ppfun.groups`, :mod:`ppfun.homs`, :mod:`ppfun.catalogue` -- exhaustive
  permutation group machinery (classes, Sylow subgroups, automorphisms,
  isomorphisms, semidirect products, builtin groups);
* :mod:`ppfun.ddelta` -- D^Delta-pairs and the vanishing test for essential algebras;
* :mod:`ppfun.essential` -- the essential algebra Out(G) |x R-bar(K);
* :mod:`ppfun.functors` -- evaluation data for the simple functors S_{L,u,W};
* :mod:`ppfun.cartan` -- the modular representation oracle (MeatAxe chopping,
  Brauer characters, Cartan matrices, the gamma basis);
* :mod:`ppfun.cli` -- the ``ppfun`` command line front end.
"""

__version__ = "0.1.0"
