#!/usr/bin/env python

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from multiprocessing import cpu_count
from sys import exc_info

from tornado.concurrent import Future, future_set_exc_info
from tornado.gen import coroutine, Return
from tornado.ioloop import IOLoop
from tornado.locks import Semaphore
from tornado.queues import Queue


class WorkerPool(object):
    """
    The WorkerPool object represents a pool of workers which each run a
    task in an executor (by default, a pool of processes).
    """
    def __init__(self, workers=None, io_loop=None, executor=None, log=None):
        if workers is None:
            workers = cpu_count()
        if io_loop is None:
            io_loop = IOLoop.current()
        if log is None:
            log = logging.getLogger(self.__class__.__module__)

        self._own_executor = executor is None
        if executor is None:
            executor = ProcessPoolExecutor(max_workers=workers)

        self._log = log
        self._io_loop = io_loop
        self._executor = executor
        self._sem = Semaphore(workers)
        self._queue = Queue()
        self._active = False

    @coroutine
    def apply(self, func, args=None, kwds=None):
        """
        Enqueue a request to be processed by a worker.  The function and
        its arguments must be picklable when the executor runs processes.
        """
        if args is None: args = ()
        if kwds is None: kwds = {}

        # Our result placeholder
        future = Future()

        # Enqueue the request
        yield self._queue.put((future, func, args, kwds))

        # Kick-start the queue manager if not already running
        self._io_loop.add_callback(self._queue_manager)

        # Get back the result
        result = yield future
        raise Return(result)

    @coroutine
    def _apply(self, future, func, args=None, kwds=None):
        """
        Execute a function in the executor.  Wrapper function.
        """
        yield self._sem.acquire()
        try:
            result = yield self._io_loop.run_in_executor(
                    self._executor, partial(func, *args, **kwds))
        except Exception:
            self._log.exception('Task %s%r failed',
                    getattr(func, '__name__', func), args)
            future_set_exc_info(future, exc_info())
        else:
            future.set_result(result)
        finally:
            self._sem.release()

    @coroutine
    def _queue_manager(self):
        """
        Queue manager co-routine.
        """
        if self._active:
            # Already active
            return

        try:
            self._active = True
            while True:
                item = yield self._queue.get()
                if item is None:
                    # Shutdown requested
                    break
                (future, func, args, kwds) = item
                self._io_loop.add_callback(
                        self._apply, future, func, args, kwds)
        finally:
            self._active = False

    def shutdown(self, wait=True):
        """
        Stop the queue manager and release the executor if we made it.
        """
        self._queue.put_nowait(None)
        if self._own_executor:
            self._executor.shutdown(wait=wait)


def run_tasks(func, tasks, workers, log=None):
    """
    Run ``func(*task)`` for every task on a private IOLoop with ``workers``
    processes and return the results in task order.
    """
    @coroutine
    def _gather():
        pool = WorkerPool(workers=workers, log=log)
        try:
            results = yield [pool.apply(func, task) for task in tasks]
        finally:
            pool.shutdown()
        raise Return(results)

    io_loop = IOLoop()
    try:
        return io_loop.run_sync(_gather)
    finally:
        io_loop.close()
