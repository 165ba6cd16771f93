# interrupts.py
import signal
import threading
import weakref
import logging
import concurrent.futures as cf

logger = logging.getLogger(__name__)


class InterruptException(Exception):
    """Raised when a run is interrupted (Ctrl+C or SIGTERM)."""
    exit_code = 130


class InterruptController:
    """
    Ctrl+C controller for a single experiment run.

    Thread pools created while the controller is active are registered and
    cancelled on interrupt; the exception then propagates so the CLI exits
    without writing report.json.
    """

    def __init__(self):
        self._stop = threading.Event()
        self._registry_pools = weakref.WeakSet()
        self._orig_handlers = {}
        self._orig_tpe_init = None

    @property
    def stopped(self) -> bool:
        return self._stop.is_set()

    def _patch(self):
        if self._orig_tpe_init is not None:
            return
        self._orig_tpe_init = cf.ThreadPoolExecutor.__init__
        orig = self._orig_tpe_init
        registry = self._registry_pools

        def tpe_init(obj, *a, **kw):
            orig(obj, *a, **kw)
            registry.add(obj)

        cf.ThreadPoolExecutor.__init__ = tpe_init

    def _unpatch(self):
        if self._orig_tpe_init is not None:
            cf.ThreadPoolExecutor.__init__ = self._orig_tpe_init
            self._orig_tpe_init = None

    def _sig_handler(self, sig, frame):
        if self._stop.is_set():
            return
        self._stop.set()
        logger.warning("Interrupt received, cancelling running tasks")
        for ex in list(self._registry_pools):
            try:
                ex.shutdown(wait=False, cancel_futures=True)
            except Exception:
                pass
        raise InterruptException("User interrupted execution")

    def __enter__(self):
        self._patch()
        if threading.current_thread() is threading.main_thread():
            for s in (signal.SIGINT, signal.SIGTERM):
                self._orig_handlers[s] = signal.getsignal(s)
                signal.signal(s, self._sig_handler)
        return self

    def __exit__(self, exc_type, exc, tb):
        for s, h in self._orig_handlers.items():
            signal.signal(s, h)
        self._orig_handlers.clear()
        self._unpatch()
        return False
