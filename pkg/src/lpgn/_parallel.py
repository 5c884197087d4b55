import os
from concurrent.futures import ThreadPoolExecutor


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("LPGN_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items) -> list:
    """``list(map(fn, items))``, threaded when LPGN_THREADS > 1; order is preserved."""
    items = list(items)
    workers = min(max_threads(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
