"""Clustering initialisers: Lloyd's k-means and normalised spectral clustering.

Both return a :class:`ClusterResult` and are also exposed as scikit-learn style
estimators (:class:`KMeans`, :class:`SpectralClustering`). ``CLUSTERERS`` maps
the labels accepted by the solvers and the CLI to the functional form; further
methods can be registered there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_generator
from .exceptions import InvalidParameterError


@dataclass(frozen=True)
class ClusterResult:
    labels: np.ndarray
    centroids: np.ndarray
    n_iter: int = 0
    inertia_history: tuple[float, ...] = field(default=(), repr=False)


def _check_k(points: np.ndarray, k) -> int:
    if int(k) != k or not 1 <= k <= points.shape[0]:
        raise InvalidParameterError(f"k must satisfy 1 <= k <= {points.shape[0]}, got {k!r}")
    return int(k)


def _sq_dists(points, centroids):
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _member_means(points, labels, k, fallback):
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros((k, points.shape[1]))
    np.add.at(sums, labels, points)
    out = fallback.copy()
    nz = counts > 0
    out[nz] = sums[nz] / counts[nz, None]
    return out, counts


def kmeans(points, k: int, rng_seed=0, max_iters: int = 300) -> ClusterResult:
    """Lloyd's algorithm from ``k`` distinct data points drawn uniformly.

    Stops once labels repeat or after ``max_iters`` assignment steps. A cluster
    that empties is re-seeded at the point currently farthest from its own
    centroid. ``inertia_history`` holds the within-cluster sum of squares after
    every assignment step.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    k = _check_k(points, k)
    rng = as_generator(rng_seed)
    n = points.shape[0]
    centroids = points[rng.choice(n, size=k, replace=False)].copy()
    labels = np.full(n, -1, dtype=np.int64)
    history = []
    it = 0
    for it in range(1, max_iters + 1):
        d2 = _sq_dists(points, centroids)
        new_labels = np.argmin(d2, axis=1)
        history.append(float(d2[np.arange(n), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        centroids, counts = _member_means(points, labels, k, centroids)
        for c in np.flatnonzero(counts == 0):
            own = _sq_dists(points, centroids)[np.arange(n), labels]
            far = int(np.argmax(own))
            centroids[c] = points[far]
            labels[far] = c
    # labels are final; make centroids exact member means
    centroids, _ = _member_means(points, labels, k, centroids)
    return ClusterResult(labels, centroids, it, tuple(history))


def _spectral_embedding(points: np.ndarray, k: int, n_neighbors: int | None) -> np.ndarray:
    n = points.shape[0]
    d = np.sqrt(_sq_dists(points, points))
    if n == 1:
        return np.ones((1, k))
    iu = np.triu_indices(n, 1)
    sigma = float(np.median(d[iu]))
    if sigma <= 0:
        sigma = 1.0
    m = min(10, n - 1) if n_neighbors is None else min(int(n_neighbors), n - 1)
    # m nearest neighbours excluding self; stable sort keeps ties deterministic
    nbrs = np.argsort(d + np.diag(np.full(n, np.inf)), axis=1, kind="stable")[:, :m]
    adj = np.zeros((n, n), dtype=bool)
    adj[np.repeat(np.arange(n), m), nbrs.ravel()] = True
    adj |= adj.T
    w = np.where(adj, np.exp(-(d ** 2) / (2.0 * sigma ** 2)), 0.0)
    deg = w.sum(axis=1)
    inv_sqrt = np.zeros(n)
    inv_sqrt[deg > 0] = 1.0 / np.sqrt(deg[deg > 0])
    lap = np.eye(n) - inv_sqrt[:, None] * w * inv_sqrt[None, :]
    lap = 0.5 * (lap + lap.T)
    _, vecs = np.linalg.eigh(lap)
    emb = vecs[:, :k]
    # eigenvector signs are arbitrary; fix them so the embedding is reproducible
    signs = np.sign(emb[np.argmax(np.abs(emb), axis=0), np.arange(k)])
    emb = emb * np.where(signs == 0, 1.0, signs)
    norms = np.linalg.norm(emb, axis=1, keepdims=True)
    return emb / np.where(norms > 0, norms, 1.0)


def spectral_cluster(points, k: int, rng_seed=0, n_neighbors: int | None = None,
                     embedding: np.ndarray | None = None) -> ClusterResult:
    """Spectral clustering on a Gaussian-weighted symmetric kNN graph.

    The bandwidth is the median pairwise distance. k-means runs on the
    row-normalised eigenvectors of the normalised Laplacian; centroids are
    reported as member means in the original plane. A precomputed
    ``embedding`` can be passed to reuse the eigendecomposition across seeds.
    """
    points = np.asarray(points, dtype=float)
    k = _check_k(points, k)
    if embedding is None:
        embedding = _spectral_embedding(points, k, n_neighbors)
    inner = kmeans(embedding, k, rng_seed)
    centroids, _ = _member_means(points, inner.labels, k, np.zeros((k, points.shape[1])))
    return ClusterResult(inner.labels, centroids, inner.n_iter, inner.inertia_history)


CLUSTERERS = {
    "kmeans": kmeans,
    "spectral": spectral_cluster,
}


def get_clusterer(name: str):
    try:
        return CLUSTERERS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown clustering method {name!r}; choose from {sorted(CLUSTERERS)}"
        ) from None


class KMeans(ClusterMixin, BaseEstimator):
    """Lloyd's k-means with random-point initialisation.

    Parameters
    ----------
    n_clusters : int
    max_iter : int
    random_state : int or None
    """

    def __init__(self, n_clusters=8, max_iter=300, random_state=None):
        self.n_clusters = n_clusters
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        res = kmeans(X, self.n_clusters, self.random_state, self.max_iter)
        self.labels_ = res.labels
        self.cluster_centers_ = res.centroids
        self.n_iter_ = res.n_iter
        self.inertia_history_ = np.array(res.inertia_history)
        self.inertia_ = self.inertia_history_[-1]
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        X = check_array(X, dtype=np.float64)
        return np.argmin(_sq_dists(X, self.cluster_centers_), axis=1)


class SpectralClustering(ClusterMixin, BaseEstimator):
    """Normalised spectral clustering over a kNN Gaussian affinity graph."""

    def __init__(self, n_clusters=8, n_neighbors=10, random_state=None):
        self.n_clusters = n_clusters
        self.n_neighbors = n_neighbors
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        res = spectral_cluster(X, self.n_clusters, self.random_state, self.n_neighbors)
        self.labels_ = res.labels
        self.cluster_centers_ = res.centroids
        return self
