import json
import os
from fractions import Fraction
from pathlib import Path

import pytest
from twistlab import document
from twistlab.algebra import LinearMap, TensorElement, unit_element
from twistlab.zoo import group_algebra, sweedler, sweedler_morphism, sweedler_presentation

PYTHON_SOURCE = Path(__file__).resolve().parent.parent / "python"


@pytest.fixture(autouse=True)
def twistlab_env(monkeypatch):
    """Disable colors, pin the seed and make the source tree importable for subprocesses."""
    monkeypatch.setenv("TWISTLAB_NO_COLOR", "1")
    monkeypatch.setenv("TWISTLAB_SEED", "20240601")
    monkeypatch.setenv("PYTHONPATH", os.pathsep.join(filter(None, [str(PYTHON_SOURCE), os.environ.get("PYTHONPATH")])))


@pytest.fixture
def h4():
    return sweedler_presentation()


@pytest.fixture
def z2():
    return group_algebra([2])


@pytest.fixture
def write_doc(tmp_path):
    """Write a document for a presentation with named elements and morphisms; returns its path."""

    def write(name, p, elements=None, morphisms=None):
        doc = document.document_for(p, elements, morphisms)
        return document.emit(doc, tmp_path / f"{name}.json")

    return write


@pytest.fixture
def sweedler_doc(write_doc):
    p, r = sweedler(1)
    return write_doc("sweedler", p, {"R": r.element})


@pytest.fixture
def z2_doc(write_doc, z2):
    return write_doc("z2", z2, {"R": unit_element((z2, z2))})


@pytest.fixture
def broken_doc(tmp_path, h4):
    """Sweedler's algebra with the g (x) x term dropped from Delta(x)."""
    raw = document.to_dict(document.document_for(h4))
    raw["comult"][2] = [[2, 0, "1"]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    return path


@pytest.fixture
def gauge_doc(write_doc):
    """Sweedler's algebra with R_1, the identity and the sign flip on x."""
    p, r = sweedler(1)
    morphisms = {"id": (LinearMap.identity(p), ""), "neg": (sweedler_morphism(-1, p), "")}
    return write_doc("gauge", p, {"R": r.element}, morphisms)


@pytest.fixture
def diagonal_docs(tmp_path, z2):
    """Sweedler's algebra with R_1 mapping to itself and onto k[Z2] with the sign R-matrix."""
    p, r = sweedler(1)
    half = Fraction(1, 2)
    sign = TensorElement((z2, z2), {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half})
    target = document.emit(document.document_for(z2, {"R": sign}), tmp_path / "z2sign.json")
    source = document.document_for(p, {"R": r.element}, {"m1": (LinearMap.identity(p), "")})
    onto = LinearMap.from_columns(p, z2, [{0: 1}, {1: 1}, {}, {}])
    source.morphisms["m2"] = document.MorphismEntry(target.name, onto.matrix)
    return document.emit(source, tmp_path / "source.json"), target
