"""
Graphviz DOT rendering of preorders, design problems, norphisms and weighted digraphs.

To turn the output into an image, save it to output.dot and run:

    $ dot -Tpng output.dot > output.png
"""
from negdesign.algebra.dp_core import BooleanRelation, DesignProblem
from negdesign.algebra.metric import WeightedDigraph, format_number
from negdesign.algebra.norphism_dp import NorphismDP
from negdesign.algebra.poset import Preorder
from negdesign.errors import NegDesignError

BANNED_EDGE = 'color=red penwidth=2'


def _gvquote(s):
    return '"{}"'.format(str(s).replace('"', r'\"'))


def _preorder_lines(P: Preorder):
    lines = ['digraph {', '  rankdir=BT;', '  node [shape=oval];']
    for element in P.elements:
        lines.append(f'  {_gvquote(element)};')
    for i, j in P.covers():
        lines.append(f'  {_gvquote(P.elements[i])} -> {_gvquote(P.elements[j])};')
    # Equivalent elements are drawn once per pair with a two-headed edge
    for i, j in P.equivalent_pairs():
        lines.append(f'  {_gvquote(P.elements[i])} -> {_gvquote(P.elements[j])} [dir=both style=dashed];')
    return lines


def _bipartite_lines(relation: BooleanRelation, edge_attributes=None):
    """Domain on the left, codomain on the right, one edge per true cell"""
    lines = ['digraph {', '  rankdir=LR;']

    def node(side, element):
        return _gvquote(f'{side}:{element}')

    for side, space in (('dom', relation.dom), ('cod', relation.cod)):
        lines.append(f'  subgraph cluster_{side} {{')
        lines.append(f'    label={_gvquote(side)};')
        for element in space.elements:
            lines.append(f'    {node(side, element)} [label={_gvquote(element)} shape=box];')
        lines.append('  }')
    attributes = f' [{edge_attributes}]' if edge_attributes else ''
    for p, q in relation.true_pairs():
        lines.append(f'  {node("dom", p)} -> {node("cod", q)}{attributes};')
    return lines


def _digraph_lines(graph: WeightedDigraph):
    lines = ['digraph {', '  node [shape=circle];']
    for node in graph.nodes:
        lines.append(f'  {_gvquote(node)};')
    for i, edge in enumerate(graph.edges):
        lines.append(f'  {_gvquote(edge.source)} -> {_gvquote(edge.target)} '
                     f'[label={_gvquote(format_number(edge.weight))} id={_gvquote(f"e{i}")}];')
    return lines


def export_dot(entity) -> str:
    """Renders a preorder as its Hasse diagram, a relation as a bipartite edge set and a graph with weight labels

    Norphism edges are the banned cells, drawn in red
    """
    if isinstance(entity, Preorder):
        lines = _preorder_lines(entity)
    elif isinstance(entity, NorphismDP):
        lines = _bipartite_lines(entity, edge_attributes=BANNED_EDGE)
    elif isinstance(entity, DesignProblem):
        lines = _bipartite_lines(entity)
    elif isinstance(entity, WeightedDigraph):
        lines = _digraph_lines(entity)
    else:
        raise NegDesignError(f'Cannot export {type(entity).__name__} to DOT')
    lines.append('}')
    return '\n'.join(lines) + '\n'
