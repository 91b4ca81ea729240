"""
Ejecución concurrente de cómputos independientes (spots de homología)
"""
import asyncio
from typing import Callable, Dict, Hashable, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
V = TypeVar("V")


async def gather_spots(tasks: Mapping[K, Callable[[], V]], threads: int = 1) -> Dict[K, V]:
    """Lanza todas las tareas en hilos, a lo sumo `threads` a la vez.

    El resultado se devuelve ordenado por clave, de modo que no depende del
    orden en que terminan los hilos. Si alguna tarea falla se relanza el error
    de la menor clave fallida.
    """
    semaphore = asyncio.Semaphore(max(1, threads))

    async def _run(fn: Callable[[], V]) -> V:
        async with semaphore:
            return await asyncio.to_thread(fn)

    keys = sorted(tasks)
    results = await asyncio.gather(*(_run(tasks[k]) for k in keys), return_exceptions=True)

    for key, result in zip(keys, results):
        if isinstance(result, BaseException):
            raise result
    return dict(zip(keys, results))


def run_spots(tasks: Mapping[K, Callable[[], V]], threads: int = 1) -> Dict[K, V]:
    """Versión síncrona: secuencial con un hilo, asyncio.gather con varios"""
    if threads <= 1 or len(tasks) <= 1:
        return {key: tasks[key]() for key in sorted(tasks)}
    return asyncio.run(gather_spots(tasks, threads))
