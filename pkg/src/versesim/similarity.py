"""Cosine similarity matrices, their summaries, and extreme-pair extraction.

Two layouts are supported: square matrices over one embedding set
(self-similarities on the diagonal) and cross matrices whose rows and
columns come from two different sets sharing one vector space. Square
matrices are computed once and mirrored, so symmetry is exact.
"""

import csv
from dataclasses import dataclass

import numpy as np

from versesim.errors import FormatError

SQUARE = "square"
CROSS = "cross"

UPPER_TRIANGLE = "upper_triangle_excl_diag"
ALL_CELLS = "all_cells"

_FILTERS = ("any", "within_rows_collection", "within_cols_collection", "cross_collections")


@dataclass(frozen=True)
class SimilarityMatrix:
    row_ids: tuple
    col_ids: tuple
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in (SQUARE, CROSS):
            raise ValueError("kind must be %r or %r" % (SQUARE, CROSS))
        if self.values.shape != (len(self.row_ids), len(self.col_ids)):
            raise ValueError(
                "matrix shape %s does not match %d row ids and %d col ids"
                % (self.values.shape, len(self.row_ids), len(self.col_ids))
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("similarity matrix contains non-finite values")
        if self.kind == SQUARE:
            if self.row_ids != self.col_ids:
                raise ValueError("square matrix must have identical row and column ids")
            if not np.array_equal(self.values, self.values.T):
                raise ValueError("square matrix is not symmetric")
            diag = np.diagonal(self.values)
            ok = (np.abs(diag - 1.0) <= 1e-9) | (diag == 0.0)
            if not np.all(ok):
                raise ValueError("square matrix diagonal must be 1 (or 0 for zero vectors)")

    @property
    def shape(self):
        return self.values.shape


@dataclass(frozen=True)
class PairScore:
    row_id: str
    col_id: str
    score: float


def cosine(u, v):
    """Cosine of two equal-length vectors; 0 if either has zero norm."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError("vectors must be 1-D with equal length, got %s and %s" % (u.shape, v.shape))
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def _normalized_rows(matrix):
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    safe = np.where(norms == 0.0, 1.0, norms)
    return matrix / safe


def similarity_matrix(rows, cols=None):
    """All-pairs cosine matrix; square over one set, cross over two.

    With ``cols`` given, entry (i, j) scores ``rows.ids[i]`` against
    ``cols.ids[j]`` (the rectangular cross layout); without it, the full
    square matrix over ``rows`` is built with its upper triangle computed
    once and mirrored.
    """
    if len(rows) == 0:
        raise ValueError("cannot build a similarity matrix from an empty embedding set")
    r = _normalized_rows(rows.matrix)
    if cols is None:
        values = r @ r.T
        values = np.triu(values) + np.triu(values, 1).T
        # exact self-similarity on the diagonal: 1, or 0 for zero vectors
        nonzero = np.any(rows.matrix != 0.0, axis=1)
        np.fill_diagonal(values, np.where(nonzero, 1.0, 0.0))
        return SimilarityMatrix(rows.ids, rows.ids, values, SQUARE)
    if len(cols) == 0:
        raise ValueError("cannot build a similarity matrix from an empty embedding set")
    if rows.dim != cols.dim:
        raise ValueError(
            "row embeddings have dim %d but column embeddings have dim %d" % (rows.dim, cols.dim)
        )
    values = r @ _normalized_rows(cols.matrix).T
    return SimilarityMatrix(rows.ids, cols.ids, values, CROSS)


def mean_score(matrix, policy):
    """Mean similarity under the aggregation policy matching the layout.

    Square matrices average the strict upper triangle (each unordered pair
    once, diagonal excluded); cross matrices average every cell.
    """
    if policy == UPPER_TRIANGLE:
        if matrix.kind != SQUARE:
            raise ValueError("policy %r requires a square matrix" % policy)
        n = len(matrix.row_ids)
        if n < 2:
            raise ValueError("square matrix needs at least 2 rows to average pairs")
        iu = np.triu_indices(n, k=1)
        return float(np.mean(matrix.values[iu]))
    if policy == ALL_CELLS:
        if matrix.kind != CROSS:
            raise ValueError("policy %r requires a cross matrix" % policy)
        return float(np.mean(matrix.values))
    raise ValueError("unknown mean policy %r" % policy)


def extreme_pairs(matrix, n, direction, pair_filter="any", collections=None):
    """The n highest- or lowest-scoring document pairs.

    Square matrices contribute each unordered off-diagonal pair once. Ties
    are broken by (row_id, col_id) so output is deterministic. Collection
    filters need a ``collections`` mapping (id -> collection tag):
    ``within_rows_collection`` / ``within_cols_collection`` keep same-
    collection pairs whose collection occurs on the named axis, and
    ``cross_collections`` keeps pairs from two different collections.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if direction not in ("highest", "lowest"):
        raise ValueError("direction must be 'highest' or 'lowest'")
    if pair_filter not in _FILTERS:
        raise ValueError("unknown filter %r (expected one of %s)" % (pair_filter, _FILTERS))
    if pair_filter != "any" and collections is None:
        raise ValueError("filter %r needs a collections mapping" % pair_filter)

    if matrix.kind == SQUARE:
        size = len(matrix.row_ids)
        ii, jj = np.triu_indices(size, k=1)
    else:
        ii, jj = np.indices(matrix.shape)
        ii, jj = ii.ravel(), jj.ravel()

    candidates = []
    for i, j in zip(ii, jj):
        rid, cid = matrix.row_ids[i], matrix.col_ids[j]
        if pair_filter != "any":
            ca, cb = collections[rid], collections[cid]
            if pair_filter == "cross_collections":
                if ca == cb:
                    continue
            else:
                if ca != cb:
                    continue
                axis_ids = matrix.row_ids if pair_filter == "within_rows_collection" else matrix.col_ids
                if ca not in {collections[x] for x in axis_ids}:
                    continue
        candidates.append(PairScore(rid, cid, float(matrix.values[i, j])))

    if not candidates:
        raise ValueError("filter %r leaves no candidate pairs" % pair_filter)
    sign = -1.0 if direction == "highest" else 1.0
    candidates.sort(key=lambda p: (sign * p.score, p.row_id, p.col_id))
    return candidates[:n]


def write_matrix_csv(matrix, path):
    """CSV layout: empty corner cell, column ids, then one row per row id.

    Scores are serialized with 9 significant digits.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + list(matrix.col_ids))
        for rid, row in zip(matrix.row_ids, matrix.values):
            writer.writerow([rid] + ["%.9g" % v for v in row])


def read_matrix_csv(path):
    """Rebuild a SimilarityMatrix from its CSV serialization."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("%s: empty matrix file" % path) from None
        if not header or header[0] != "":
            raise FormatError("%s: first header cell must be empty" % path)
        col_ids = tuple(header[1:])
        row_ids = []
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(col_ids) + 1:
                raise FormatError(
                    "%s:%d: expected %d cells, got %d" % (path, lineno, len(col_ids) + 1, len(rec))
                )
            row_ids.append(rec[0])
            try:
                rows.append([float(v) for v in rec[1:]])
            except ValueError as exc:
                raise FormatError("%s:%d: non-numeric score: %s" % (path, lineno, exc)) from exc
    values = np.array(rows, dtype=np.float64)
    if not row_ids:
        raise FormatError("%s: matrix has no rows" % path)
    kind = SQUARE if tuple(row_ids) == col_ids else CROSS
    return SimilarityMatrix(tuple(row_ids), col_ids, values, kind)
