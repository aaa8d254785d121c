import pytest

from twosphere.complex import build_complex


def tetra(offset=0):
    return build_complex([(0 + offset, 1 + offset, 2 + offset), (0 + offset, 1 + offset, 3 + offset),
                          (0 + offset, 2 + offset, 3 + offset), (1 + offset, 2 + offset, 3 + offset)])


def octahedron(offset=0):
    # poles 0, 5; equator 1..4
    tris = []
    eq = [1, 2, 3, 4]
    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        tris += [(0, a, b), (5, a, b)]
    return build_complex([tuple(v + offset for v in t) for t in tris])


def seven_vertex_torus():
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return build_complex(tris)


def mobius_strip():
    return build_complex([(i, (i + 1) % 5, (i + 2) % 5) for i in range(5)])


def book(pages):
    return build_complex([(0, 1, 2 + i) for i in range(pages)])


def pinched_instance():
    """Cone over a hexagon + ring disk + octahedron sharing two edges.

    Without its conflict triangles the complex has a component pinched at
    vertex 0, yet deleting the 8 octahedron triangles leaves a sphere.
    """
    eq = [1, 2, 3, 4, 5, 6]
    inner = [11, 12, 13, 14, 15, 16]
    tris = []
    for i in range(6):
        a, b = eq[i], eq[(i + 1) % 6]
        p, q = inner[i], inner[(i + 1) % 6]
        tris += [(0, a, b), (a, b, p), (b, q, p), (7, p, q)]
    octa = [(p, q, r) for p in (2, 5) for q in (3, 6) for r in (8, 9)]
    return build_complex(tris + octa), build_complex(octa)


@pytest.fixture
def tetrahedron():
    return tetra()


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
