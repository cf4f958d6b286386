"""Ribbon graphs, slides and Dehn twists acting on Hopf-algebra gauge theories."""
from .graph import GraphError, GraphPath, RibbonGraph, build_graph, standard_graph, torus_graph
from .words import PivotWord, Relabeling, parse_word

__all__ = ["GraphError", "GraphPath", "RibbonGraph", "build_graph", "standard_graph", "torus_graph",
           "PivotWord", "Relabeling", "parse_word"]
