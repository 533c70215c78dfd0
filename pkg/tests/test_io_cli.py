import json

import pytest

from emb2.catalog import CATALOG_NAMES
from emb2.cli import main
from emb2.documents import (
    document_from_text,
    document_hash,
    generate_example,
    parse_input,
    serialize_document,
)
from emb2.errors import (
    InputSyntaxError,
    InvalidSurface,
    SchemaVersionUnsupported,
    UnknownExample,
)


def test_round_trip_all_catalog_documents():
    for name in CATALOG_NAMES:
        doc = generate_example(name)
        text = serialize_document(doc)
        assert document_from_text(text) == doc
        assert serialize_document(document_from_text(text)) == text


def test_parse_valid_pair():
    doc = generate_example("sphere_arc")
    surface, x = parse_input(serialize_document(doc))
    assert x.is_arc


def test_parse_degenerate_triangle():
    text = json.dumps(
        {
            "schema_version": 1,
            "vertices": 3,
            "triangles": [[0, 0, 1]],
            "subcomplex": {"vertices": [0], "edges": [], "triangles": []},
        }
    )
    with pytest.raises(InvalidSurface) as exc:
        parse_input(text)
    assert any(c == "DegenerateTriangle" for c, _ in exc.value.report.failures)


def test_parse_syntax_and_version_errors():
    with pytest.raises(InputSyntaxError):
        document_from_text("{not json")
    with pytest.raises(SchemaVersionUnsupported):
        document_from_text('{"schema_version": 99}')
    with pytest.raises(InputSyntaxError):
        document_from_text('{"schema_version": 1, "vertices": -1, "triangles": [], "subcomplex": {}}')


def test_unknown_example():
    with pytest.raises(UnknownExample):
        generate_example("does_not_exist")


def test_json_reports_byte_stable(tmp_path, capsys):
    doc_path = tmp_path / "m.json"
    assert main(["generate", "torus_meridian", "-o", str(doc_path)]) == 0
    assert main(["classify", str(doc_path), "--json"]) == 0
    out1 = capsys.readouterr().out
    assert main(["classify", str(doc_path), "--json"]) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2
    parsed = json.loads(out1)
    assert parsed["descriptor"]["tag"] == "Torus"
    assert parsed["case"] == "Thm 1.2 (2)"
    assert "timing" not in out1


def test_cli_classify_human(tmp_path, capsys):
    doc_path = tmp_path / "m.json"
    main(["generate", "torus_meridian", "-o", str(doc_path)])
    capsys.readouterr()
    assert main(["classify", str(doc_path)]) == 0
    out = capsys.readouterr().out
    assert "Torus" in out and "Theorem 1.2 (2)" in out

    assert main(["classify", str(doc_path), "--explain"]) == 0
    out = capsys.readouterr().out
    assert "trace:" in out and "subgroup" in out


def test_cli_validate_rejects_pinch(tmp_path, capsys):
    doc = {
        "schema_version": 1,
        "vertices": 7,
        "triangles": [
            [0, 1, 2], [0, 2, 3], [0, 3, 1],
            [0, 4, 5], [0, 5, 6], [0, 6, 4],
        ],
        "subcomplex": {"vertices": [0], "edges": [], "triangles": []},
    }
    path = tmp_path / "pinch.json"
    path.write_text(json.dumps(doc))
    code = main(["validate", str(path)])
    err = capsys.readouterr().err
    assert code == 1
    assert "NonManifoldVertexLink" in err


def test_cli_validate_ok(tmp_path, capsys):
    path = tmp_path / "ok.json"
    main(["generate", "sphere_arc", "-o", str(path)])
    capsys.readouterr()
    assert main(["validate", str(path)]) == 0
    assert "valid" in capsys.readouterr().out


def test_cli_pi1(tmp_path, capsys):
    path = tmp_path / "k.json"
    main(["generate", "klein_meridian", "-o", str(path)])
    capsys.readouterr()
    assert main(["pi1", str(path), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["strategy"] == "KleinGroup"
    assert data["subgroup"] == "NontrivialCyclic"


def test_cli_missing_file(capsys):
    assert main(["classify", "/nonexistent/file.json"]) == 1


def test_document_hash_stable():
    doc = generate_example("disk_arc")
    assert document_hash(doc) == document_hash(generate_example("disk_arc"))


def test_cli_selftest(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    rows = [
        line
        for line in out.splitlines()
        if line.strip().endswith(" ok") and any(line.startswith(n) for n in CATALOG_NAMES)
    ]
    assert len(rows) == 14
