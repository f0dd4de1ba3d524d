import pytest

from tilepack.core import Objective, Placement, instance_from_tiles, parse_tile
from tilepack.files import (
    FormatError,
    parse_instance,
    parse_placement,
    write_instance,
    write_placement,
)
from tilepack.generators import (
    CliqueGraph,
    CoupledTask,
    gen_clique_reduction,
    gen_coupled_tasks,
    gen_experiment_three,
    gen_experiment_two,
    gen_inapprox_gadget,
    gen_lower_bound,
    gen_random,
    gen_ziegler_adversary,
)

EXAMPLE_TEXT = """\
; three tiles, length objective
objective=minlength
1 #..#
1 #.#
1 #...#
"""


def test_parse_basic():
    inst = parse_instance(EXAMPLE_TEXT)
    assert inst.objective is Objective.MIN_LENGTH
    assert [t.shape.pattern() for t in inst.types] == ["#..#", "#.#", "#...#"]
    assert [t.count for t in inst.types] == [1, 1, 1]


def test_header_fields():
    inst = parse_instance("objective=minmaxshift bound=2 padded=6\n1 #.#\n")
    assert inst.objective is Objective.MIN_MAX_SHIFT
    assert inst.bound == 2
    assert inst.padded_length == 6


def test_roundtrip_is_bit_exact():
    inst = parse_instance(EXAMPLE_TEXT)
    text = write_instance(inst)
    again = parse_instance(text)
    assert again == inst
    assert write_instance(again) == text


def test_errors_name_the_line():
    with pytest.raises(FormatError, match="line 2"):
        parse_instance("objective=minlength\nbogus line here\n")
    with pytest.raises(FormatError, match="line 1"):
        parse_instance("objective=sideways\n1 #\n")
    with pytest.raises(FormatError, match="line 3"):
        parse_instance("objective=minlength\n1 #.#\n0 #\n")
    with pytest.raises(FormatError):
        parse_instance("")
    with pytest.raises(FormatError, match="line 2"):
        parse_instance("objective=minlength\n2 .#.\n")


def test_placement_roundtrip():
    inst = parse_instance(EXAMPLE_TEXT)
    p = Placement(inst.flatten(), (0, 2, 1))
    text = write_placement(p)
    assert "; placement: 132123" in text
    again = parse_placement(text, inst)
    assert again.starts == p.starts


def test_placement_wrong_count():
    inst = parse_instance(EXAMPLE_TEXT)
    with pytest.raises(FormatError, match="3 tiles"):
        parse_placement("start=0\nstart=1\n", inst)


def every_generator_instance():
    yield gen_lower_bound(4)[0]
    yield gen_lower_bound(6)[0]
    yield gen_ziegler_adversary(4)
    yield gen_experiment_two(2, 2, 4)[0]
    yield gen_experiment_two(3, 3, 6)[0]
    yield gen_experiment_three(2, 3, 6)[0]
    yield gen_experiment_three(3, 3, 9)[0]
    yield gen_coupled_tasks([CoupledTask(1, 1, 2), CoupledTask(2, 1, 0)], makespan=7)
    yield gen_clique_reduction(CliqueGraph(3, frozenset({(0, 1), (1, 2)}), 2))
    yield gen_inapprox_gadget(instance_from_tiles([parse_tile("#")]), delta=3, rho=1)
    yield gen_random(5, 6)
    yield gen_random(6, 4, (2, 5), (0.5, 1.0), Objective.MIN_MAX_SHIFT)


def test_generator_outputs_roundtrip():
    for inst in every_generator_instance():
        text = write_instance(inst)
        again = parse_instance(text)
        assert again == inst, text
        assert write_instance(again) == text
