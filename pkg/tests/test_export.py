import textwrap

import pytest

from flatlab import (
    ModeUnsupportedError,
    UnsupportedConstructError,
    build_problem,
    export_crosscheck,
    parse_problem,
)


def _problem(text):
    return build_problem(parse_problem(textwrap.dedent(text)))


@pytest.fixture
def cyclic():
    return _problem(
        """
        field Q
        ring A = k[y] / (y^3)
        module M over A generators 1 relations [[y^2]]
        """
    )


@pytest.fixture
def graded():
    return _problem(
        """
        field Q
        ring A = k[e] / (e^2)
        graded G over A xvars [x0, x1] degrees [0] relations [[e*x0]]
        """
    )


def test_m2_affine(cyclic):
    script = export_crosscheck(cyclic, "m2").splitlines()

    assert script == [
        "-- flatlab cross-check for A",
        "kk = QQ",
        "baseRing = kk[y]",
        "quotientA = baseRing / ideal(y^3)",
        "maximalM = ideal(y)",
        "",
        "moduleM = coker transpose matrix(quotientA, {{y^2}})",
        "print numgens source basis(moduleM ** (quotientA / maximalM^1))"
        " -- expected 1",
        "print numgens source basis(moduleM ** (quotientA / maximalM^2))"
        " -- expected 2",
        "print numgens source basis(moduleM ** (quotientA / maximalM^3))"
        " -- expected 2",
        "print numgens source basis Tor_1(coker vars quotientA, moduleM)"
        " -- expected 1",
    ]


def test_m2_free_module_over_prime_field():
    problem = _problem(
        """
        field Fp 5
        ring A = k[y, z] / (y^2, z^2)
        module M over A generators 3 relations []
        """
    )

    script = export_crosscheck(problem, "m2")

    assert "kk = ZZ/5\n" in script
    assert "moduleM = quotientA^3\n" in script
    assert script.endswith(" -- expected 0\n")


def test_m2_graded(graded):
    script = export_crosscheck(graded, "m2")

    assert "baseRing = kk[e, x0, x1, Degrees => {0, 1, 1}]\n" in script
    assert (
        "gradedG = coker map(quotientA^{0}, , "
        "transpose matrix(quotientA, {{e*x0}}))\n"
    ) in script
    assert (
        "print numgens source basis(2, gradedG ** "
        "(quotientA / maximalM^2)) -- expected 4\n"
    ) in script
    assert "moduleM" not in script


def test_m2_rejects_underscores():
    problem = _problem(
        """
        ring A = k[y_1] / (y_1^2)
        module M over A generators 1 relations []
        """
    )

    with pytest.raises(UnsupportedConstructError) as exc_info:
        export_crosscheck(problem, "m2")
    assert exc_info.value.dialect == "m2"
    assert exc_info.value.construct == "variable name"


def test_singular_affine(cyclic):
    script = export_crosscheck(cyclic, "singular").splitlines()

    assert script[:5] == [
        "// flatlab cross-check for A",
        'LIB "homolog.lib";',
        "ring baseRing = 0, (y), ds;",
        "ideal definingJ = y^3;",
        "qring quotientA = std(definingJ);",
    ]
    assert "module relationsM = [y^2];" in script
    assert (
        "vdim(std(relationsM + maxideal(3) * freemodule(1))); // expected 2"
    ) in script
    assert script[-1] == (
        "vdim(std(Tor(1, residueK, relationsM))); // expected 1"
    )


def test_singular_rejects_graded(graded):
    with pytest.raises(UnsupportedConstructError) as exc_info:
        export_crosscheck(graded, "singular")
    assert exc_info.value.dialect == "singular"
    assert exc_info.value.construct == "graded"


def test_unknown_dialect(cyclic):
    with pytest.raises(UnsupportedConstructError) as exc_info:
        export_crosscheck(cyclic, "maple")
    assert exc_info.value.construct == "dialect"


def test_non_artinian_needs_truncation():
    text = """
        ring B = k[y, z] / (y*z)
        module M over B generators 1 relations []
        """

    with pytest.raises(ModeUnsupportedError):
        export_crosscheck(_problem(text), "m2")

    script = export_crosscheck(
        _problem(text + "option mode = truncated 2\n"), "singular"
    )
    assert script.count("// expected") == 4


def test_m2_graded_script():
    problem = _problem(
        """
        field Q
        ring A = k[e] / (e^2)
        graded G over A xvars [x0, x1] degrees [0, -1] relations [[e*x0, 0]]
        option window = 0..4
        """
    )

    script = export_crosscheck(problem, "m2").splitlines()

    expected = [
        "-- flatlab cross-check for A",
        "kk = QQ",
        "baseRing = kk[e, x0, x1, Degrees => {0, 1, 1}]",
        "quotientA = baseRing / ideal(e^2)",
        "maximalM = ideal(e)",
        "",
        "gradedG = coker map(quotientA^{0, 1}, , "
        "transpose matrix(quotientA, {{e*x0, 0}}))",
    ]
    # 2m + 3 monomials in degree m; at order 1 the base has length 2 and
    # e*x0 kills m of them
    values = {
        0: [3, 5, 7, 9, 11],
        1: [6, 9, 12, 15, 18],
    }
    for n, row in values.items():
        for m, value in enumerate(row):
            expected.append(
                f"print numgens source basis({m}, gradedG ** "
                f"(quotientA / maximalM^{n + 1})) -- expected {value}"
            )
    assert script == expected
