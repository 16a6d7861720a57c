import sympy

from detkit.poly import Polynomial


def to_sympy(p: Polynomial, symbols=None):
    """Independent sympy image of a polynomial, used as an oracle."""
    names = p.ring.names
    syms = symbols or sympy.symbols(list(names))
    expr = sympy.Integer(0)
    for exps, c in p.exponent_items():
        term = sympy.Rational(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else sympy.Integer(c)
        for s, e in zip(syms, exps):
            if e:
                term *= s ** e
        expr += term
    return sympy.expand(expr)


def matrix_to_sympy(M):
    syms = sympy.symbols(list(M.ring.names))
    return sympy.Matrix([[to_sympy(M[i, j], syms) for j in range(M.cols)] for i in range(M.rows)])


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
