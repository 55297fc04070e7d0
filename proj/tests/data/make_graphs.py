"""Writes every connected graph on at most 7 nodes (up to isomorphism) from the networkx atlas.

One graph per line: node count, then the edge list as u-v pairs.
"""
import networkx as nx

with open("connected_graphs_7.txt", "w") as out:
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 0 or not nx.is_connected(g):
            continue
        edges = " ".join(f"{min(u, v)}-{max(u, v)}" for u, v in sorted(g.edges()))
        out.write(f"{g.number_of_nodes()} {edges}".rstrip() + "\n")
