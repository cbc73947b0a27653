import math

import numpy as np
import pytest

from semsim import data_path
from semsim.errors import EmptyCollection, OutOfVocabulary, ParseError, RankTooLarge, SingleDocument, UnknownTerm
from semsim.lsa import (
    DocumentCollection,
    build_matrix,
    default_k,
    dump_latent_space,
    load_corpus,
    load_latent_space,
    lsa_similarity,
    parse_corpus_text,
    tokenize,
    train,
    word_vector,
)


def brute_cosine(x, y):
    nx, ny = math.sqrt(sum(a * a for a in x)), math.sqrt(sum(b * b for b in y))
    if nx == 0 or ny == 0:
        return 0.0
    return sum(a * b for a, b in zip(x, y)) / (nx * ny)


def docs(*texts):
    return DocumentCollection(tuple((f"d{i + 1}", t) for i, t in enumerate(texts)))


class TestTokenize:
    def test_case_and_punctuation(self):
        assert tokenize("The bank, the Bank!") == ["the", "bank", "the", "bank"]

    def test_empty(self):
        assert tokenize("") == []

    def test_length_and_digits(self):
        assert tokenize("e-mail 42 bank") == ["mail", "bank"]

    def test_unicode_letters(self):
        assert tokenize("Café ÉCOLE naïve_x") == ["café", "école", "naïve"]

    def test_stopwords(self):
        assert tokenize("The bank and THE river", stopwords=["the", "and"]) == ["bank", "river"]


class TestCorpus:
    def test_separator_file(self):
        dc = parse_corpus_text("%%DOC a\nfirst text\n%%DOC b\nsecond\nline\n")
        assert dc.docs == (("a", "first text"), ("b", "second\nline"))

    def test_text_before_separator(self):
        with pytest.raises(ParseError):
            parse_corpus_text("stray\n%%DOC a\nx\n")

    def test_duplicate_ids(self):
        with pytest.raises(ParseError):
            parse_corpus_text("%%DOC a\nx\n%%DOC a\ny\n")

    def test_directory(self, tmp_path):
        (tmp_path / "b.txt").write_text("bravo text")
        (tmp_path / "a.txt").write_text("alpha text")
        (tmp_path / "skip.md").write_text("ignored")
        dc = load_corpus(tmp_path)
        assert [i for i, _ in dc.docs] == ["a.txt", "b.txt"]

    def test_plain_file_is_one_document(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("just words")
        assert load_corpus(p).docs == (("c.txt", "just words"),)

    def test_checksum_stable(self):
        assert load_corpus(data_path("lsa_3doc.txt")).checksum == load_corpus(data_path("lsa_3doc.txt")).checksum


class TestBuildMatrix:
    def test_single_letters_never_become_terms(self):
        with pytest.raises(EmptyCollection):
            build_matrix(docs("a b", "b"), "raw")

    def test_raw_counts_first_occurrence_order(self):
        m = build_matrix(docs("aa bb", "bb"), "raw")
        assert m.vocabulary == ("aa", "bb")
        np.testing.assert_array_equal(m.matrix.to_dense(), [[1, 0], [1, 1]])

    def test_single_doc_term_log_entropy(self):
        m = build_matrix(docs("solo shared", "shared other"), "log_entropy")
        dense = m.matrix.to_dense()
        assert dense[m.vocabulary.index("solo"), 0] == 1.0

    def test_uniform_term_zero_weight(self):
        m = build_matrix(docs("every one", "every two", "every three"), "log_entropy")
        assert np.all(m.matrix.to_dense()[m.vocabulary.index("every")] == 0.0)

    def test_log_entropy_value(self):
        # term "xx": counts (2, 1) over two documents
        m = build_matrix(docs("xx xx", "xx yy"), "log_entropy")
        p = np.array([2 / 3, 1 / 3])
        g = 1 + np.sum(p * np.log2(p)) / math.log2(2)
        dense = m.matrix.to_dense()
        assert dense[0, 0] == pytest.approx(math.log2(3) * g, rel=1e-14)
        assert dense[0, 1] == pytest.approx(1.0 * g, rel=1e-14)

    def test_errors(self):
        with pytest.raises(EmptyCollection):
            build_matrix(DocumentCollection(()), "raw")
        with pytest.raises(SingleDocument):
            build_matrix(docs("only one"), "raw")
        with pytest.raises(EmptyCollection):
            build_matrix(docs("1 2", "x"), "raw")
        with pytest.raises(ValueError):
            build_matrix(docs("aa", "bb"), "tfidf")


class TestTrain:
    def test_default_k(self):
        assert default_k(1000, 200) == 50
        assert default_k(17, 3) == 2
        assert default_k(1, 5) == 1

    def test_full_rank_reconstruction(self):
        m = build_matrix(load_corpus(data_path("lsa_3doc.txt")), "raw")
        ls = train(m, 3)
        x = m.matrix.to_dense()
        assert np.linalg.norm(ls.factors.reconstruct() - x) <= 1e-8 * np.linalg.norm(x)

    def test_rank_one(self):
        m = build_matrix(docs("car road", "car road car road"), "raw")
        ls = train(m, 1)
        x = m.matrix.to_dense()
        assert np.abs(ls.factors.reconstruct() - x).max() <= 1e-8
        # closed form: x = [1,2]^T-rows; u ∝ (1,1)/sqrt2, sigma = sqrt(10)
        np.testing.assert_allclose(ls.factors.s, [math.sqrt(10)], rtol=1e-12)
        np.testing.assert_allclose(word_vector(ls, "car"), [math.sqrt(10) / math.sqrt(2)], rtol=1e-12)

    def test_k_too_large(self):
        m = build_matrix(load_corpus(data_path("lsa_3doc.txt")), "raw")
        with pytest.raises(RankTooLarge):
            train(m, 4)


@pytest.fixture(scope="module")
def three_doc():
    m = build_matrix(load_corpus(data_path("lsa_3doc.txt")), "log_entropy")
    return m, train(m, 3)


class TestSimilarity:
    def test_vector_shape(self, three_doc):
        _, ls = three_doc
        assert word_vector(ls, "car").shape == (3,)

    def test_unknown_term(self, three_doc):
        with pytest.raises(UnknownTerm):
            word_vector(three_doc[1], "zebra")

    def test_self_similarity(self, three_doc):
        _, ls = three_doc
        for term in ("car", "bank", "truck"):
            assert lsa_similarity(ls, term, term) == pytest.approx(1.0, abs=1e-12)

    def test_identical_rows(self):
        m = build_matrix(docs("alpha beta gamma", "alpha beta", "delta"), "raw")
        ls = train(m, 3)
        np.testing.assert_allclose(word_vector(ls, "alpha"), word_vector(ls, "beta"), atol=1e-12)
        assert lsa_similarity(ls, "alpha", "beta") == pytest.approx(1.0, abs=1e-12)

    def test_symmetric(self, three_doc):
        _, ls = three_doc
        assert lsa_similarity(ls, "car", "road") == lsa_similarity(ls, "road", "car")

    def test_full_rank_matches_raw_rows(self, three_doc):
        m, ls = three_doc
        x = m.matrix.to_dense()
        for i, a in enumerate(m.vocabulary):
            for j, b in enumerate(m.vocabulary):
                assert lsa_similarity(ls, a, b) == pytest.approx(brute_cosine(x[i], x[j]), abs=1e-6)

    def test_disjoint_groups(self):
        m = build_matrix(docs("cat dog cat", "dog cat mouse", "stock bond", "bond bond stock"), "raw")
        ls = train(m, 4)
        x = m.matrix.to_dense()
        v = m.vocabulary
        for a in ("cat", "dog", "mouse"):
            for b in ("stock", "bond"):
                assert lsa_similarity(ls, a, b) == pytest.approx(0.0, abs=1e-9)
                assert lsa_similarity(ls, a, b) == pytest.approx(
                    brute_cosine(x[v.index(a)], x[v.index(b)]), abs=1e-6)

    def test_truncation_nesting(self):
        m = build_matrix(load_corpus(data_path("mini", "general.txt")), "log_entropy")
        full = train(m, 8)
        assert np.all(np.diff(full.factors.s) < -1e-6)  # distinct spectrum
        small = train(m, 4)
        for a, b in [("road", "highway"), ("truck", "goods"), ("station", "bus")]:
            va, vb = word_vector(full, a)[:4], word_vector(full, b)[:4]
            expected = float(va @ vb / (np.linalg.norm(va) * np.linalg.norm(vb)))
            assert lsa_similarity(small, a, b) == pytest.approx(expected, abs=1e-9)

    def test_multiword_label_is_mean(self, three_doc):
        _, ls = three_doc
        mean = (word_vector(ls, "car") + word_vector(ls, "road")) / 2
        v = word_vector(ls, "truck")
        expected = float(mean @ v / (np.linalg.norm(mean) * np.linalg.norm(v)))
        assert lsa_similarity(ls, "car road", "truck") == pytest.approx(expected, abs=1e-14)
        assert lsa_similarity(ls, "car zebra", "car") == pytest.approx(1.0, abs=1e-12)

    def test_out_of_vocabulary(self, three_doc):
        with pytest.raises(OutOfVocabulary) as exc:
            lsa_similarity(three_doc[1], "car", "zebra unicorn")
        assert exc.value.label == "zebra unicorn"


def test_save_load_round_trip(tmp_path, three_doc):
    m, ls = three_doc
    path = tmp_path / "space.lsa"
    ls.save(path)
    header = path.read_text().splitlines()[0]
    assert header.startswith(f"#semsim-lsa v1 k=3 weighting=log_entropy corpus={m.corpus_checksum}")
    again = load_latent_space(path)
    assert again.vocabulary == ls.vocabulary
    np.testing.assert_array_equal(again.vectors, ls.vectors)
    for a in ls.vocabulary:
        for b in ls.vocabulary:
            assert abs(lsa_similarity(again, a, b) - lsa_similarity(ls, a, b)) <= 1e-12
    assert dump_latent_space(again) == dump_latent_space(ls)


def test_load_rejects_bad_files(tmp_path):
    p = tmp_path / "bad.lsa"
    p.write_text("not a header\n")
    with pytest.raises(ParseError):
        load_latent_space(p)
    p.write_text("#semsim-lsa v1 k=2 weighting=raw corpus=x terms=1\nword\n1.0\n")
    with pytest.raises(ParseError):
        load_latent_space(p)
