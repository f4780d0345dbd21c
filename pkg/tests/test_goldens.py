from expanse.goldens import dimension_example, gb_example, polymatroid_example, run_goldens


def test_gb_example_parts():
    r = gb_example()
    assert r["base_basis"] and r["G0"] and r["G1"] and r["union"]


def test_polymatroid_example():
    assert polymatroid_example()["reproduced"]


def test_dimension_example():
    r = dimension_example()
    assert r["reproduced"]


def test_run_goldens_names():
    assert [r["name"] for r in run_goldens()] == ["groebner-expansion", "polymatroid-expansion", "dimension"]
