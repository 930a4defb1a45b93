"""Write the graph documents used by the other demos and by the CLI examples.

Every file is a JSON graph document: vertices, edges, ccw rotations, the
surface with its holes and seams, and (where useful) a connection.
"""
from pathlib import Path

from multiwebs.annulus import AnnulusGrid
from multiwebs.connection import random_sl
from multiwebs.document import GraphDocument, save
from multiwebs import generators as gen

OUT = Path(__file__).parent / "graphs"


def main():
    OUT.mkdir(exist_ok=True)
    docs = {
        "cycle4": GraphDocument(gen.cycle(4), n=3),
        "theta3": GraphDocument(gen.theta(3), n=3),
        "grid2x3": GraphDocument(gen.grid(2, 3), n=2),
        "cube": GraphDocument(gen.cube(), n=3),
        "no-matching": GraphDocument(gen.no_matching(), n=3),
        "annulus-1x2": GraphDocument(AnnulusGrid(1, 2).graph, n=3),
        "annulus-3x2": GraphDocument(AnnulusGrid(3, 2).graph, n=3),
        "pants-theta": GraphDocument(gen.pants_theta(), n=3),
        "pants-disk-cycle": GraphDocument(gen.pants_disk_cycle(), n=3),
        "pants-grid2x3": GraphDocument(gen.pants_grid(3), n=3),
        "pants-grid2x4": GraphDocument(gen.pants_grid(4), n=3),
    }
    g = gen.grid(2, 3)
    docs["grid2x3-sl2"] = GraphDocument(g, n=2, connection=random_sl(g, 2, 11))
    for name, doc in docs.items():
        save(doc, OUT / f"{name}.json")
        print(f"wrote {name}.json: {len(doc.graph.vertices)} vertices, "
              f"{len(doc.graph.edges)} edges, surface {doc.graph.surface.kind}")
    # a 3-multiweb on the 2x2 annulus: one closed chain around the core
    (OUT / "annulus-1x2-loop.json").write_text('{"0": 1, "1": 2, "2": 2, "3": 1}\n')
    # a contractible closed chain on the 4-cycle
    (OUT / "cycle4-chain.json").write_text('{"0": 1, "1": 2, "2": 1, "3": 2}\n')


if __name__ == "__main__":
    main()
