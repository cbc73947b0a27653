import pytest

from semsim import data_path
from semsim.errors import CycleDetected, DanglingEdge, EmptyDatabase, MalformedLine, ParseError
from semsim.wordnet_io import (
    dump_simple_taxonomy,
    load_simple_taxonomy,
    load_wordnet,
    parse_data_line,
    parse_index_line,
    parse_simple_taxonomy,
)

ENTITY = "00001740 03 n 01 entity 0 000 | that which is perceived"
THING = "00002137 03 n 01 thing 0 001 @ 00001740 n 0000 | a thing"


class TestDataLine:
    def test_no_pointers(self):
        rec = parse_data_line(ENTITY)
        assert rec.offset == 1740
        assert rec.lex_filenum == 3
        assert rec.pos == "n"
        assert rec.words == (("entity", 0),)
        assert rec.pointers == ()
        assert rec.gloss == "that which is perceived"

    def test_hypernym_pointer(self):
        rec = parse_data_line(THING)
        assert rec.pointers == (("@", 1740, "n"),)

    def test_word_count_mismatch(self):
        with pytest.raises(MalformedLine):
            parse_data_line("00001740 03 n 02 entity 0 000 | that which is perceived")

    def test_w_cnt_is_hex(self):
        words = " ".join(f"w{i} 0" for i in range(16))
        rec = parse_data_line(f"00000099 03 n 10 {words} 000 | sixteen words")
        assert len(rec.words) == 16
        with pytest.raises(MalformedLine):
            parse_data_line(f"00000099 03 n 16 {words} 000 | decimal reading")

    def test_lex_id_is_hex(self):
        rec = parse_data_line("00000099 03 n 02 bank a bank_building f 000 | x")
        assert rec.words == (("bank", 10), ("bank_building", 15))

    def test_p_cnt_is_decimal(self):
        ptrs = " ".join(f"~ 0000{i:04d} n 0000" for i in range(10))
        rec = parse_data_line(f"00000099 03 n 01 thing 0 010 {ptrs} | ten pointers")
        assert len(rec.pointers) == 10

    def test_real_style_line(self):
        line = ("02958343 06 n 05 car 0 auto 0 automobile 0 machine 6 motorcar 0 003 "
                "@ 03791235 n 0000 %p 02685514 n 0000 ~ 02701002 n 0000 | a motor vehicle; "
                "\"he needs a car to get to work\"  \n")
        rec = parse_data_line(line)
        assert [w for w, _ in rec.words] == ["car", "auto", "automobile", "machine", "motorcar"]
        assert rec.words[3] == ("machine", 6)
        assert rec.pointers[0] == ("@", 3791235, "n")
        assert rec.gloss.startswith("a motor vehicle;")

    def test_verb_frames(self):
        line = "00001740 29 v 04 breathe 0 take_a_breath 0 respire 0 suspire 3 001 @ 00002325 v 0000 02 + 02 00 + 08 00 | draw air"
        rec = parse_data_line(line)
        assert rec.pos == "v"
        assert len(rec.words) == 4

    def test_adjective_marker_kept_in_raw(self):
        rec = parse_data_line("00001740 00 a 01 able(a) 0 000 | having the means")
        assert rec.words == (("able(a)", 0),)

    @pytest.mark.parametrize("line,position", [
        ("0000174X 03 n 01 entity 0 000 | g", 0),
        ("00001740 03 q 01 entity 0 000 | g", 12),
        ("00001740 03 n 01 entity 0 001 ?? 00000001 n 0000 | g", 30),
        ("00001740 03 n 01 entity 0 000 extra | g", 30),
    ])
    def test_error_position(self, line, position):
        with pytest.raises(MalformedLine) as exc:
            parse_data_line(line)
        assert exc.value.position == position


def test_index_line():
    assert parse_index_line("thing n 1 1 @ 1 0 00002137  ") == ("thing", "n", [2137])
    with pytest.raises(MalformedLine):
        parse_index_line("thing n 2 0 2 0 00002137")


class TestLoadWordnet:
    def test_two_record_fixture(self):
        t = load_wordnet(data_path("wordnet", "index.noun"), data_path("wordnet", "data.noun"))
        assert len(t) == 2
        assert t.root == "n-00001740"
        assert t.synsets["n-00002137"].parents == {"n-00001740"}
        assert t.depth("n-00002137") == 2
        assert t.synsets_for("thing") == ("n-00002137",)
        assert t.word_similarity_wup("thing", "entity") == 2 * 1 / (1 + 2)

    def test_without_index(self):
        t = load_wordnet(None, data_path("wordnet", "data.noun"))
        assert set(t.lemma_index) == {"entity", "thing"}

    def test_empty(self, tmp_path):
        p = tmp_path / "data.noun"
        p.write_text("  1 license only\n")
        with pytest.raises(EmptyDatabase):
            load_wordnet(None, p)

    def test_dangling_pointer(self, tmp_path):
        p = tmp_path / "data.noun"
        p.write_text("00002137 03 n 01 thing 0 001 @ 00001740 n 0000 | a thing\n")
        with pytest.raises(DanglingEdge) as exc:
            load_wordnet(None, p)
        assert "00001740" in str(exc.value)

    def test_instance_hypernym_and_other_pointers(self, tmp_path):
        p = tmp_path / "data.noun"
        p.write_text(
            "00000001 03 n 01 city 0 001 ~ 00000002 n 0000 | a city\n"
            "00000002 15 n 01 Paris 0 002 @i 00000001 n 0000 %p 00000003 n 0000 | capital\n"
            "00000003 15 n 01 Montmartre 0 001 #p 00000002 n 0000 | district\n"
        )
        t = load_wordnet(None, p)
        assert t.synsets["n-00000002"].parents == {"n-00000001"}
        assert t.synsets["n-00000003"].parents == {"ROOT"}
        assert "paris" in t.lemma_index

    def test_cycle(self, tmp_path):
        p = tmp_path / "data.noun"
        p.write_text(
            "00000001 03 n 01 a 0 001 @ 00000002 n 0000 | a\n"
            "00000002 03 n 01 b 0 001 @ 00000001 n 0000 | b\n"
        )
        with pytest.raises(CycleDetected):
            load_wordnet(None, p)

    def test_malformed_reports_line(self, tmp_path):
        p = tmp_path / "data.noun"
        p.write_text("  license\n00000001 03 n 02 a 0 000 | a\n")
        with pytest.raises(MalformedLine) as exc:
            load_wordnet(None, p)
        assert exc.value.line == 2

    def test_deterministic(self):
        args = (data_path("wordnet", "index.noun"), data_path("wordnet", "data.noun"))
        assert load_wordnet(*args).checksum == load_wordnet(*args).checksum


class TestSimpleFormat:
    def test_chain(self):
        t = parse_simple_taxonomy("N a cat\nN b animal\nE a b\n")
        assert t.root == "b" and len(t) == 2

    def test_unknown_directive(self):
        with pytest.raises(ParseError) as exc:
            parse_simple_taxonomy("N a cat\n# comment\nX nonsense\n")
        assert exc.value.line == 3

    def test_empty(self):
        with pytest.raises(EmptyDatabase):
            parse_simple_taxonomy("# nothing\n\n")

    def test_bad_edge(self):
        with pytest.raises(ParseError):
            parse_simple_taxonomy("N a cat\nE a\n")

    def test_multiword_and_gloss(self):
        t = parse_simple_taxonomy("N r entity\nN m motor vehicle,car | a self-propelled vehicle\nE m r\n")
        assert t.synsets["m"].lemmas == ("motor vehicle", "car")
        assert t.synsets["m"].gloss == "a self-propelled vehicle"

    @pytest.mark.parametrize("name", ["chain.tax", "toy/taxonomy.tax", "mini/taxonomy.tax"])
    def test_round_trip(self, name):
        t = load_simple_taxonomy(data_path(*name.split("/")))
        again = parse_simple_taxonomy(dump_simple_taxonomy(t))
        assert set(again.synsets) == set(t.synsets)
        assert again.edges() == t.edges()
        assert all(again.synsets[s].lemmas == t.synsets[s].lemmas for s in t.synsets)
        assert again.checksum == t.checksum

    def test_virtual_root_round_trip(self):
        t = parse_simple_taxonomy("N a cat\nN b dog\n")
        again = parse_simple_taxonomy(dump_simple_taxonomy(t))
        assert again.root == "ROOT" and again.edges() == t.edges()
