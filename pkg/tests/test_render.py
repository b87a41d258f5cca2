from kroman import bounds, construct, render


def test_labeling_svg_is_deterministic():
    L = construct.linear_c9(7, 3)
    a = render.labeling_figure(L)
    b = render.labeling_figure(L)
    assert a == b and b"<svg" in a


def test_region_svg_is_deterministic():
    cells = bounds.region_table(9, range(4, 21), range(35, 46))
    a = render.region_figure(cells, title="m=9")
    assert a == render.region_figure(cells, title="m=9")
    for fam in ("linear", "uniform", "packing"):
        assert fam.encode() in a


def test_ascii_layout():
    L = construct.linear_c5(8, 2)
    text = render.render_ascii(L)
    lines = text.splitlines()
    assert lines[0] == "C_5 x P_8, k=2, weight 28"
    assert len(lines) == 2 + 5
    # row 1 holds the first-fibre patch
    assert lines[3].split("|")[1].split()[0] == "*2*"


def test_region_ascii_letters():
    cells = bounds.region_table(9, range(4, 8), [1, 26])
    assert render.region_ascii(cells).splitlines() == ["26 UUUU", " 1 LLLL", "   4567"]
