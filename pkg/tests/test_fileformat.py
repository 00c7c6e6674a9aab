"""Parsing, canonical serialization, sidecars, DOT export."""

from __future__ import annotations

import pytest

from kgraphs import product_graph, outsplit
from kgraphs.fileformat import (
    GraphDocument,
    ParseError,
    SplitDirective,
    document_for_graph,
    directive_for_spec,
    dot_export,
    parse,
    parse_partition_file,
    parse_sidecar,
    serialize,
    sidecar_text,
)

from conftest import DATA, paper_spec


@pytest.fixture(scope="module")
def lambda_one_doc() -> GraphDocument:
    return parse((DATA / "lambda1.kg").read_text(encoding="utf-8"))


MINIMAL = """\
kgraph 1 k=2 colors=blue,red
vertex p
edge a : blue p -> p
edge r : red p -> p
square r a = a r
"""


class TestParse:
    def test_worked_example(self, lambda_one_doc):
        doc = lambda_one_doc
        assert doc.k == 2 and doc.colors == ("blue", "red")
        assert len(doc.skeleton.vertices) == 4
        assert len(doc.skeleton.edges) == 12
        assert len(doc.squares.pairs) == 8
        graph = doc.build()
        assert graph.is_source_free().ok

    def test_color_indexing(self, lambda_one_doc):
        assert lambda_one_doc.color_index("blue") == 1
        assert lambda_one_doc.color_name(2) == "red"
        with pytest.raises(KeyError, match="unknown color"):
            lambda_one_doc.color_index("green")

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("vertex v\n", "missing header"),
            ("kgraph 1 k=2 colors=blue\n", "distinct color names"),
            ("kgraph 1 k=0 colors=\n", "color names"),
            ("kgraph 1 k=2 colors=blue,red\nvertex v\nvertex v\n", "duplicate vertex"),
            (MINIMAL + "edge a : blue p -> p\n", "duplicate id"),
            (MINIMAL + "edge z : green p -> p\n", "unknown color"),
            (MINIMAL + "edge z : blue p -> q\n", "unknown vertex"),
            (MINIMAL + "vertex {x}\n", "invalid vertex identifier"),
            (MINIMAL + "widget w\n", "unknown declaration"),
            (MINIMAL + "partition p : {a}\n", "require a split"),
            (MINIMAL + "square r a = a q\n", "unknown edge"),
        ],
    )
    def test_diagnostics(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse(text)

    def test_degree_violation_square(self):
        text = MINIMAL.replace("square r a = a r", "square r a = r r")
        with pytest.raises(ParseError, match="bicolored"):
            parse(text)

    def test_non_composable_square(self):
        text = (
            "kgraph 1 k=2 colors=blue,red\nvertex p\nvertex q\n"
            "edge a : blue p -> q\nedge r : red p -> p\n"
            "square r a = a r\n"
        )
        with pytest.raises(ParseError, match="not composable"):
            parse(text)

    def test_line_numbers_reported(self):
        bad = MINIMAL + "edge z : green p -> p\n"
        with pytest.raises(ParseError) as err:
            parse(bad)
        assert err.value.line == 6

    def test_split_block(self):
        text = MINIMAL.replace(
            "edge a : blue p -> p",
            "edge a : blue p -> p\nedge a2 : blue p -> p\nedge r2 : red p -> p",
        )
        text += (
            "square r a2 = a2 r\nsquare r2 a = a r2\nsquare r2 a2 = a2 r2\n"
            "split color=blue base=p\npartition p : {a2} {a}\n"
        )
        doc = parse(text)
        assert doc.split == SplitDirective("blue", "p", ((("p"), (("a2",), ("a",))),))
        spec = doc.split_spec()
        assert spec.color == 1 and spec.base == "p"
        assert spec.partitions["p"] == (("a2",), ("a",))

    def test_partition_coverage_checked(self):
        text = MINIMAL + "split color=blue base=p\npartition p : {a} {a}\n"
        with pytest.raises(ParseError, match="two blocks"):
            parse(text)
        text = MINIMAL + "split color=blue base=p\npartition p : {r}\n"
        with pytest.raises(ParseError, match="does not cover|not outgoing"):
            parse(text)

    def test_comments_and_blanks_ignored(self):
        text = "# leading\n\n" + MINIMAL.replace("vertex p", "vertex p  # the vertex")
        doc = parse(text)
        assert doc.skeleton.vertices == ("p",)


class TestRoundTrip:
    def test_worked_example(self, lambda_one_doc):
        assert parse(serialize(lambda_one_doc)) == lambda_one_doc

    def test_with_split_block(self, lambda_one_doc, lambda_one):
        directive = directive_for_spec(lambda_one_doc, paper_spec())
        doc = GraphDocument(
            lambda_one_doc.version,
            lambda_one_doc.colors,
            lambda_one_doc.skeleton,
            lambda_one_doc.squares,
            directive,
        )
        assert parse(serialize(doc)) == doc

    def test_product_graph(self):
        from conftest import random_one_skeleton
        import random

        rng = random.Random(3)
        graph = product_graph([random_one_skeleton(rng, "f"), random_one_skeleton(rng, "g")])
        doc = document_for_graph(graph, ["blue", "red"])
        again = parse(serialize(doc))
        assert again == doc
        assert serialize(again) == serialize(doc)

    def test_serialization_is_canonical(self, lambda_one_doc):
        text = serialize(lambda_one_doc)
        lines = text.splitlines()
        vertex_lines = [l for l in lines if l.startswith("vertex ")]
        assert vertex_lines == sorted(vertex_lines)
        edge_lines = [l for l in lines if l.startswith("edge ")]
        assert edge_lines == sorted(edge_lines)


class TestPartitionFile:
    def test_partition_file(self, lambda_one_doc):
        text = (DATA / "paper.part").read_text(encoding="utf-8")
        directive = parse_partition_file(text, lambda_one_doc)
        assert directive.color == "blue" and directive.base == "v"
        assert dict(directive.partitions)["v"] == (("α",), ("h",), ("i",))

    def test_missing_split_line(self, lambda_one_doc):
        with pytest.raises(ParseError, match="missing split"):
            parse_partition_file("partition v : {α} {h} {i}\n", lambda_one_doc)

    def test_unknown_edge(self, lambda_one_doc):
        with pytest.raises(ParseError, match="unknown edge"):
            parse_partition_file(
                "split color=blue base=v\npartition v : {zz}\n", lambda_one_doc
            )


class TestSidecar:
    def test_round_trip(self, lambda_one, lambda_one_doc):
        result = outsplit(lambda_one, paper_spec())
        text = sidecar_text(result, lambda_one_doc.colors)
        color, base, parents = parse_sidecar(text)
        assert color == "blue" and base == "v"
        merged = dict(result.parent_vertex) | dict(result.parent_edge)
        assert parents == merged

    def test_parse_errors(self):
        with pytest.raises(ParseError, match="missing split"):
            parse_sidecar("parent a.1 = a\n")
        with pytest.raises(ParseError, match="duplicate parent"):
            parse_sidecar(
                "split color=blue base=v\nparent a.1 = a\nparent a.1 = b\n"
            )


class TestDot:
    def test_export_shape(self, lambda_one_doc):
        text = dot_export(lambda_one_doc)
        assert text.startswith("digraph")
        assert '"v" -> "x" [label="b", style=dashed];' in text
        assert '"v" -> "x" [label="h", style=solid];' in text
        assert "//   e h = k b" in text
        assert text == dot_export(lambda_one_doc)

    def test_style_cycling(self):
        text = (
            "kgraph 1 k=4 colors=c1,c2,c3,c4\nvertex p\n"
            + "".join(f"edge a{i} : c{i} p -> p\n" for i in (1, 2, 3, 4))
        )
        doc = parse(text)
        out = dot_export(doc)
        assert 'label="a4", style=solid' in out
        assert 'label="a3", style=dotted' in out
