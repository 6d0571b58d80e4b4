"""Walsh-Hadamard spreading codes and the direct-sequence codec."""


def hadamard(order):
    """Sylvester Hadamard matrix of a power-of-two order, as lists of +1/-1."""
    if order < 1 or order & (order - 1):
        raise ValueError(f"Hadamard order must be a power of two, got {order}")
    matrix = [[1]]
    while len(matrix) < order:
        matrix = [row + row for row in matrix] + [row + [-x for x in row] for row in matrix]
    return matrix


def walsh_codes(n):
    """First n rows of the smallest Hadamard matrix with at least n rows."""
    if n < 1:
        raise ValueError("need at least one code")
    order = 1
    while order < n:
        order *= 2
    return [tuple(row) for row in hadamard(order)[:n]]


def cdma_encode(signal, code):
    """Spread each +1/-1 symbol into `len(code)` chips."""
    chips = []
    for bit in signal:
        if bit not in (1, -1):
            raise ValueError(f"symbols must be +1 or -1, got {bit!r}")
        chips.extend(bit * c for c in code)
    return chips


def correlate(chips, code):
    """Per-symbol correlation of a chip stream against `code`."""
    length = len(code)
    if length == 0 or len(chips) % length:
        raise ValueError(f"chip stream of length {len(chips)} is not a multiple of code length {length}")
    return [sum(x * c for x, c in zip(chips[i:i + length], code))
            for i in range(0, len(chips), length)]


def cdma_decode(chips, code):
    """Recover symbols by the sign of the correlation; 0 marks "no signal" on this code."""
    return [(corr > 0) - (corr < 0) for corr in correlate(chips, code)]


def superpose(*streams):
    if len({len(s) for s in streams}) > 1:
        raise ValueError("chip streams differ in length")
    return [sum(chips) for chips in zip(*streams)]
