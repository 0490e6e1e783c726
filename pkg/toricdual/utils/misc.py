"""
Module of miscellaneous utilities.
"""

import hashlib
import json
from typing import Any, Callable, List, Sequence

from loguru import logger


def parallel_map(
    function: Callable[[Any], Any],
    items: Sequence[Any],
    backend: str = "serial",
    number_of_workers: int = 1,
    progress: bool = False,
) -> List[Any]:
    """
    Apply ``function`` to every item and return the results in input order.

    Parameters
    ----------
    function : callable
        A pure function of one argument.
    items : sequence
        The arguments.
    backend : str, optional
        "serial" (default) or "ray".
    number_of_workers : int, optional
        Upper bound on concurrently running tasks for the ray backend.
    progress : bool, optional
        Show a tqdm progress bar.

    Returns
    -------
    list
        ``[function(item) for item in items]``.
    """
    from tqdm import tqdm

    if backend == "serial" or len(items) <= 1:
        iterator = tqdm(items, disable=not progress)
        return [function(item) for item in iterator]

    if backend != "ray":
        raise ValueError(f"Unknown backend {backend}; use 'serial' or 'ray'.")

    from toricdual.utils.io import import_

    ray = import_("ray")
    if not ray.is_initialized():
        ray.init(num_cpus=number_of_workers, include_dashboard=False)
    logger.debug(
        f"Dispatching {len(items)} tasks to ray with {number_of_workers} workers"
    )
    remote_function = ray.remote(function)
    futures = [remote_function.remote(item) for item in items]
    results = []
    for future in tqdm(futures, disable=not progress):
        # ray.get on each future keeps the output in submission order
        results.append(ray.get(future))
    return results


def digest(payload: Any) -> str:
    """Short sha256 digest of a JSON-serialisable payload (key order independent)."""
    encoded = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(encoded).hexdigest()[:16]
