from pathlib import Path

from gradedbrackets import corpus
from gradedbrackets.docs import doc_from_tensors, load_doc, print_doc
from gradedbrackets.generators import SuiteConfig, random_batch, random_element, random_first_order_op

DATA = Path(__file__).parent / "data"


def test_seed_42_degree_1_on_the_plane_is_pinned():
    A = corpus.tangent_plane()
    x = random_batch(SuiteConfig(seed=42), A.sections, 1, 1)[0]
    golden = DATA / "golden-seed42-degree1-plane.doc"
    assert print_doc(doc_from_tensors(A, {"X": x})) == golden.read_text()
    assert load_doc(str(golden)).tensor("X") == x


def test_degrees_and_counts():
    A = corpus.tangent_space3()
    config = SuiteConfig(seed=1, cases=5)
    assert random_batch(config, A.sections, 0, 0) == []
    batch = random_batch(config, A.sections, 0)
    assert len(batch) == 5
    assert all(x.degrees() <= {1} for x in batch)
    assert random_batch(config, A.sections, 0) == batch


def test_coefficient_degree_bound():
    A = corpus.tangent_space3()
    rng = SuiteConfig(seed=2).rng()
    for _ in range(20):
        x = random_element(rng, A.sections, 1, max_coeff_degree=2)
        assert all(c.degree() <= 2 for c in x.terms.values())


def test_degree_out_of_range_gives_zero():
    A = corpus.tangent_plane()
    rng = SuiteConfig(seed=3).rng()
    assert not random_element(rng, A.sections, 2)
    assert not random_element(rng, A.sections, -2)


def test_first_order_op_degrees():
    A = corpus.tangent_plane()
    op = random_first_order_op(SuiteConfig(seed=4).rng(), A.sections, 1)
    assert op.first.degrees() <= {2} and op.second.degrees() <= {1}
