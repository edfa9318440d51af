import os

import numpy as np

from negdesign.algebra import dp_core, poset
from negdesign.algebra.dp_core import FVector, RCovector
from negdesign.algebra.metric import WeightedDigraph


class DataSetup:
    """Class containing common setup on file paths and small instances used in unit tests"""
    resource_dir = os.path.join(os.getcwd(), 'test', 'negdesign', 'resources')
    golden_chain2_file = os.path.join(resource_dir, 'golden_chain2.json')
    golden_metric_file = os.path.join(resource_dir, 'golden_metric.json')
    golden_files = [golden_chain2_file, golden_metric_file]
    out_dir = os.path.join(resource_dir, 'output')

    chain2 = poset.chain(2)
    identity2 = dp_core.identity(chain2)
    identity2_matrix = [[1, 1], [0, 1]]

    # Demand for the top element only and resources at the bottom only
    f_top = FVector(chain2, np.array([False, True]))
    f_all = FVector(chain2, np.array([True, True]))
    r_bottom = RCovector(chain2, np.array([True, False]))
    r_all = RCovector(chain2, np.array([True, True]))

    # a -2-> b -3-> c -1-> d plus a direct a -7-> c
    line_graph = WeightedDigraph(('a', 'b', 'c', 'd'), (('a', 'b', 2), ('b', 'c', 3), ('a', 'c', 7), ('c', 'd', 1)))

    minimal_problem = """{
  "posets": {"P": {"elements": ["0", "1"], "covers": [["0", "1"]]}},
  "dps": {"id": {"identity": "P"}}
}"""

    non_monotone_problem = """{
  "posets": {"P": {"elements": ["0", "1"], "covers": [["0", "1"]]}},
  "dps": {"bad": {"dom": "P", "cod": "P", "true_pairs": [["1", "0"]]}}
}"""

    # Bound gac and path gbc live on G, path hbc on H. Edge b -> c has index 1 in G and 3 in H
    two_graph_problem = """{
  "graphs": {
    "G": {"nodes": ["a", "b", "c"], "edges": [["a", "b", 2], ["b", "c", 3]]},
    "H": {"nodes": ["a", "b", "c"], "edges": [["a", "c", 9], ["a", "b", 1], ["c", "a", 1], ["b", "c", 4]]}
  },
  "paths": {"gbc": {"graph": "G", "nodes": ["b", "c"]}, "hbc": {"graph": "H", "nodes": ["b", "c"]}},
  "bounds": {"gac": {"graph": "G", "from": "a", "to": "c", "mu": 5}}
}"""

    # Valid JSON with definitions of the wrong shape, keyed by the offending entity
    malformed_problems = {
        'P': '{"posets": {"P": {"elements": 5}}}',
        'Q': '{"posets": {"Q": {"elements": ["0", "1"], "covers": [5]}}}',
        'R': '{"posets": {"R": {"elements": ["0", "1"], "covers": [["0", "1", "0"]]}}}',
        'G': '{"graphs": {"G": {"nodes": ["a", "b"], "edges": [["a", "b", [1]]]}}}',
        'n': '{"posets": {"P": {"elements": ["0"]}}, "norphisms": {"n": {"parts": 5}}}',
    }
