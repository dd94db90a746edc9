import random

import pytest

from qldpcdec import (
    BitMatrix,
    BitVector,
    CssCode,
    PcmFormatError,
    TannerGraph,
    VertexId,
    bit_vertex,
    builtin,
    check_vertex,
    hamming_matrix,
    load_pcm,
    mat_vec_mul,
    new_css,
    rank,
    steane_code,
    toric_code,
    write_pcm,
)
from oracles import random_matrix


def test_vertex_id_validation():
    with pytest.raises(ValueError):
        VertexId("qubit", 0)
    with pytest.raises(ValueError):
        VertexId("bit", -1)
    assert bit_vertex(5) < check_vertex(0)  # ordering is (kind, index)


class TestTannerGraph:
    def test_hamming_check_zero_neighbours(self):
        g = TannerGraph.from_matrix(hamming_matrix())
        assert g.neighbours(check_vertex(0)) == {bit_vertex(j) for j in (0, 3, 5, 6)}

    def test_isolated_bit_has_no_neighbours(self):
        g = TannerGraph.from_matrix(BitMatrix.from_rows([[1, 0], [1, 0]]))
        assert g.neighbours(bit_vertex(1)) == frozenset()

    def test_hamming_bit_six_touches_all_checks(self):
        g = TannerGraph.from_matrix(hamming_matrix())
        assert g.neighbours(bit_vertex(6)) == {check_vertex(i) for i in range(3)}

    def test_out_of_range_vertex(self):
        g = TannerGraph.from_matrix(hamming_matrix())
        with pytest.raises(ValueError):
            g.neighbours(check_vertex(3))

    def test_neighbour_relation_is_symmetric(self):
        rng = random.Random(12)
        for _ in range(20):
            g = TannerGraph.from_matrix(random_matrix(rng, 4, 6))
            for i in range(g.check_count):
                c = check_vertex(i)
                for b in g.neighbours(c):
                    assert c in g.neighbours(b)
            for j in range(g.bit_count):
                b = bit_vertex(j)
                for c in g.neighbours(b):
                    assert b in g.neighbours(c)

    def test_adjacency_and_transpose_consistent(self):
        rng = random.Random(8)
        g = TannerGraph.from_matrix(random_matrix(rng, 5, 7))
        for i, row in enumerate(g.check_neighbors):
            for j in row:
                assert i in g.bit_neighbors[j]
        for j, col in enumerate(g.bit_neighbors):
            for i in col:
                assert j in g.check_neighbors[i]


class TestInterior:
    def test_full_vertex_set_is_its_own_interior(self):
        g = TannerGraph.from_matrix(hamming_matrix())
        everything = {check_vertex(i) for i in range(3)} | {bit_vertex(j) for j in range(7)}
        assert g.interior(everything) == everything

    def test_grown_check_one_interior(self):
        # check 1 plus its bit neighbours: only the check itself and the bit
        # whose single check is check 1 are enclosed
        g = TannerGraph.from_matrix(hamming_matrix())
        w = {check_vertex(1)} | set(g.neighbours(check_vertex(1)))
        assert g.interior(w) == {check_vertex(1), bit_vertex(1)}

    def test_empty_set(self):
        g = TannerGraph.from_matrix(hamming_matrix())
        assert g.interior(set()) == set()

    def test_pointwise_definition(self):
        rng = random.Random(77)
        g = TannerGraph.from_matrix(random_matrix(rng, 4, 6))
        vertices = [check_vertex(i) for i in range(4)] + [bit_vertex(j) for j in range(6)]
        for _ in range(30):
            w = {v for v in vertices if rng.random() < 0.5}
            inner = g.interior(w)
            for v in vertices:
                assert (v in inner) == (v in w and g.neighbours(v) <= w)


class TestCssCode:
    def test_steane_parameters(self):
        code = steane_code()
        assert code.n == 7
        assert code.k == 1

    def test_zero_matrices_commute(self):
        z = BitMatrix.zeros(1, 5)
        code = new_css(z, z)
        assert code.k == 5

    def test_odd_overlap_rejected_with_pair(self):
        m = BitMatrix.from_rows([[1, 0]])
        with pytest.raises(ValueError, match="row 0 and hz row 0"):
            new_css(m, m)

    def test_column_mismatch_rejected(self):
        with pytest.raises(ValueError, match="column mismatch"):
            new_css(BitMatrix.zeros(1, 4), BitMatrix.zeros(1, 5))

    def test_builtin_rows_have_even_pairwise_overlap(self):
        for code in (steane_code(), toric_code(2), toric_code(3), toric_code(5)):
            for rx in code.hx.row_bits:
                for rz in code.hz.row_bits:
                    assert (rx & rz).bit_count() % 2 == 0

    def test_max_degree_bound(self):
        with pytest.raises(ValueError, match="degree"):
            CssCode(hamming_matrix(), hamming_matrix(), max_degree=3)
        CssCode(hamming_matrix(), hamming_matrix(), max_degree=4)

    def test_side_selection(self):
        code = toric_code(3)
        assert code.check_matrix("x") is code.hz
        assert code.stabilizer_matrix("x") is code.hx
        assert code.check_matrix("z") is code.hx
        with pytest.raises(ValueError):
            code.check_matrix("y")


class TestToric:
    @pytest.mark.parametrize("length,n", [(2, 8), (4, 32), (6, 72)])
    def test_parameters(self, length, n):
        code = toric_code(length)
        assert code.n == n
        assert code.k == 2
        assert code.n - rank(code.hx) - rank(code.hz) == 2

    def test_rejects_small_lattice(self):
        with pytest.raises(ValueError):
            toric_code(1)

    def test_degrees_are_ldpc(self):
        code = toric_code(4)
        assert code.tanner_z.max_check_degree == 4
        assert code.tanner_z.max_bit_degree == 2


class TestBuiltin:
    def test_steane(self):
        code = builtin("steane")
        assert isinstance(code, CssCode) and code.n == 7 and code.k == 1

    def test_hamming7(self):
        m = builtin("hamming7")
        assert isinstance(m, BitMatrix)
        assert (m.rows, m.cols) == (3, 7)
        assert rank(m) == 3

    def test_toric_spellings(self):
        assert builtin("toric:3").n == 18
        assert builtin("toric(3)").n == 18
        assert builtin("toric:3").k == 2

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin("shor")
        with pytest.raises(ValueError):
            builtin("toric:x")


class TestPcmFiles:
    def test_dense_parse(self, tmp_path):
        path = tmp_path / "m.pcm"
        path.write_text("101\n011\n")
        assert load_pcm(path, "dense") == BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])

    def test_dense_alist_equivalence(self, tmp_path):
        m = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        dense = tmp_path / "m.pcm"
        alist = tmp_path / "m.alist"
        write_pcm(m, dense, "dense")
        write_pcm(m, alist, "alist")
        assert load_pcm(dense, "dense") == load_pcm(alist, "alist")

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.pcm"
        path.write_text("")
        for fmt in ("dense", "alist"):
            with pytest.raises(PcmFormatError, match="empty"):
                load_pcm(path, fmt)

    def test_dense_bad_character_reports_line(self, tmp_path):
        path = tmp_path / "bad.pcm"
        path.write_text("101\n0x1\n")
        with pytest.raises(PcmFormatError, match=":2"):
            load_pcm(path, "dense")

    def test_dense_ragged_rows_report_line(self, tmp_path):
        path = tmp_path / "ragged.pcm"
        path.write_text("101\n01\n")
        with pytest.raises(PcmFormatError, match=":2"):
            load_pcm(path, "dense")

    def test_roundtrip_random(self, tmp_path):
        rng = random.Random(31)
        for idx in range(20):
            m = random_matrix(rng, rng.randrange(1, 6), rng.randrange(1, 8), density=0.4)
            for fmt in ("dense", "alist"):
                path = tmp_path / f"m{idx}.{fmt}"
                write_pcm(m, path, fmt)
                assert load_pcm(path, fmt) == m

    def test_alist_degree_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.alist"
        # column 0 declares degree 2 but lists one entry
        path.write_text("2 2\n2 2\n2 1\n2 1\n1\n2\n1 2\n1\n")
        with pytest.raises(PcmFormatError, match="declared degree"):
            load_pcm(path, "alist")

    def test_alist_row_column_disagreement_rejected(self, tmp_path):
        path = tmp_path / "bad2.alist"
        # column lists put ones at (0,0) and (1,1); row lists claim otherwise
        path.write_text("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n")
        with pytest.raises(PcmFormatError, match="disagrees"):
            load_pcm(path, "alist")

    def test_alist_out_of_range_index(self, tmp_path):
        path = tmp_path / "bad3.alist"
        path.write_text("2 2\n1 1\n1 1\n1 1\n3\n2\n1\n2\n")
        with pytest.raises(PcmFormatError, match="outside"):
            load_pcm(path, "alist")

    def test_alist_zero_padding_tolerated(self, tmp_path):
        m = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        path = tmp_path / "padded.alist"
        path.write_text("3 2\n2 2\n1 1 2\n2 2\n1 0\n2 0\n1 2\n1 3\n2 3\n")
        assert load_pcm(path, "alist") == m

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError, match="format"):
            load_pcm(tmp_path / "x", "csv")


def test_loaded_pcm_decodes_like_builtin(tmp_path):
    h = hamming_matrix()
    path = tmp_path / "hamming.pcm"
    write_pcm(h, path, "dense")
    code = CssCode(load_pcm(path), load_pcm(path))
    sigma = mat_vec_mul(code.hz, BitVector.unit(7, 1))
    assert sigma.support() == (1,)
