import functools
import threading


def once_property(fn):
    """Lazily computed attribute, populated at most once per instance.

    Readers see either nothing (and wait on the instance lock) or the complete
    value.  The owning class must create ``self._lock = threading.RLock()``.
    """
    attr = f"_once_{fn.__name__}"

    @functools.wraps(fn)
    def getter(self):
        d = self.__dict__
        if attr in d:
            return d[attr]
        with self._lock:
            if attr not in d:
                d[attr] = fn(self)
        return d[attr]

    return property(getter)


def new_lock():
    return threading.RLock()
