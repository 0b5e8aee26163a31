"""Upper-left corner of the ray matrix as published in the original 1964 table.

Rows are listed seed first. Entries in ``ORACLE_CHECKED`` come from a
low-resolution reproduction of that table and are never trusted as golden
values; they are compared against ``nth_prime`` of their left neighbour and
any mismatch is reported as a data discrepancy.
"""

PUBLISHED_CORNER = (
    (1, 2, 3, 5, 11, 31, 127, 709, 5381, 52771),
    (4, 7, 17, 59, 277, 1787, 15299),
    (6, 13, 41, 179, 1063, 8527),
    (8, 19, 67, 331, 2221, 19577),
)

# (mu, nu) positions, 1-based rows and 0-based columns
ORACLE_CHECKED = frozenset({(1, 9), (2, 6)})


def published_entries():
    """Yield ``(mu, nu, value)`` for every printed entry."""
    for mu, row in enumerate(PUBLISHED_CORNER, start=1):
        for nu, value in enumerate(row):
            yield mu, nu, value


def trusted_rows():
    """Printed rows with the oracle-checked entries cut off."""
    rows = []
    for mu, row in enumerate(PUBLISHED_CORNER, start=1):
        keep = [v for nu, v in enumerate(row) if (mu, nu) not in ORACLE_CHECKED]
        rows.append(tuple(keep))
    return tuple(rows)
