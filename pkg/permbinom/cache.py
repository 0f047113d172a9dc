#!/usr/bin/env python

from time import time
from collections import OrderedDict
from collections.abc import Mapping
import logging


# Built values are deterministic, so by default nothing expires and only
# max_entries bounds the cache.
DEFAULT_CACHE_DURATION = float('inf')
DEFAULT_MAX_ENTRIES = 64


class ComputedCache(Mapping):
    """
    Results of an expensive ``builder(key)``.  At most ``max_entries``
    results are held; the least recently used one is dropped to make room.
    Field contexts carry numpy tables of q^2 entries each.

    With a finite ``cache_duration`` an entry also expires that many
    seconds after its last use and is rebuilt on the next access.
    """

    def __init__(self, builder, name=None, cache_duration=DEFAULT_CACHE_DURATION,
            max_entries=DEFAULT_MAX_ENTRIES, log=None):
        if name is None:
            name = getattr(builder, '__name__', 'cache')
        if log is None:
            log = logging.getLogger(self.__class__.__module__).getChild(name)
        if max_entries < 1:
            raise ValueError('max_entries must be positive')

        self._log = log
        self._builder = builder
        self._name = name
        self._cache_duration = float(cache_duration)
        self._max_entries = int(max_entries)
        self._items = OrderedDict()
        self._hits = 0
        self._misses = 0
        self._evictions = 0

    def __getitem__(self, key):
        """
        Return the result for ``key``, building it on a miss or once its
        entry has expired.
        """
        now = time()
        entry = self._items.pop(key, None)
        if (entry is not None) and (entry[0] > now):
            self._hits += 1
            value = entry[1]
            self._log.debug('Have %s', key)
        else:
            self._misses += 1
            self._log.debug('Building %s', key)
            value = self._builder(key)
            self._evict(self._max_entries - 1)
        self._items[key] = (now + self._cache_duration, value)
        return value

    def __contains__(self, key):
        # Never builds.
        return key in self._items

    def __iter__(self):
        now = time()
        for key, (ex, _) in list(self._items.items()):
            if ex > now:
                yield key

    def __len__(self):
        return len(list(self.__iter__()))

    def _evict(self, keep):
        while len(self._items) > keep:
            (key, _) = self._items.popitem(last=False)
            self._evictions += 1
            self._log.debug('Evicting %s', key)

    def purge(self):
        """
        Purge the cache of expired content.
        """
        now = time()
        for key, (expiry, _) in list(self._items.items()):
            if expiry <= now:
                self._log.debug('Purging expired item %s', key)
                self._items.pop(key, None)

    def clear(self):
        self._items.clear()

    @property
    def next_expiry(self):
        """
        Return the time of the next expiry, if any.
        """
        expiries = [ex for (ex, _) in self._items.values()]
        if len(expiries):
            return min(expiries)
        return None

    @property
    def meta(self):
        return {
                'name': self._name,
                'entries': len(self._items),
                'max_entries': self._max_entries,
                'hits': self._hits,
                'misses': self._misses,
                'evictions': self._evictions,
        }
