"""
Progress bar implementations

Tracks long enumerations and the verification suite with tqdm, falling back to
plain text lines or to nothing. Bars write to stderr so stdout stays clean for
JSON reports.
"""

from abc import ABC, abstractmethod
from typing import Optional
import logging
import sys

logger = logging.getLogger('ordinaryplanes')

try:
    from tqdm import tqdm as _tqdm
    HAS_TQDM = True
except ImportError:
    HAS_TQDM = False
    logger.debug("tqdm not available, using plain progress output")


class ProgressBar(ABC):
    """
    Abstract base class for progress bars
    """

    @abstractmethod
    def update(self, current: int, total: int):
        """
        Report progress

        Args:
            current: Completed units
            total: Units in the whole task
        """
        pass

    @abstractmethod
    def close(self):
        pass

    def set_description(self, desc: str):
        pass

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()


class TqdmProgressBar(ProgressBar):
    """
    Progress bar implementation using tqdm
    """

    def __init__(
        self,
        desc: str = "Working",
        total: Optional[int] = None,
        unit: str = 'it',
        leave: bool = True
    ):
        if not HAS_TQDM:
            raise RuntimeError("tqdm not available")

        self.desc = desc
        self.total = total
        self.unit = unit
        self.leave = leave
        self.pbar = None
        self._last_n = 0

    def __enter__(self):
        self.pbar = _tqdm(
            desc=self.desc,
            total=self.total,
            unit=self.unit,
            leave=self.leave,
            file=sys.stderr,
            dynamic_ncols=True
        )
        return self

    def update(self, current: int, total: int):
        if self.pbar is None:
            return
        if self.pbar.total != total:
            self.pbar.total = total
        delta = current - self._last_n
        if delta > 0:
            self.pbar.update(delta)
            self._last_n = current

    def set_description(self, desc: str):
        if self.pbar:
            self.pbar.set_description(desc)

    def close(self):
        if self.pbar:
            self.pbar.close()
            self.pbar = None


class SimpleProgressBar(ProgressBar):
    """
    Text progress for terminals without ANSI support; prints every 10%
    """

    def __init__(self, desc: str = "Working", total: Optional[int] = None):
        self.desc = desc
        self.total = total
        self._last_percentage = -10
        self._started = False

    def __enter__(self):
        self._started = True
        return self

    def update(self, current: int, total: int):
        if not self._started:
            return

        percentage = min(int(current / total * 100), 100) if total > 0 else 100
        if percentage >= self._last_percentage + 10:
            print(f"{self.desc}: {percentage}%", file=sys.stderr, flush=True)
            self._last_percentage = percentage

    def set_description(self, desc: str):
        self.desc = desc

    def close(self):
        if self._started and self._last_percentage < 100:
            print(f"{self.desc}: 100%", file=sys.stderr, flush=True)
        self._started = False


class NoOpProgressBar(ProgressBar):
    """
    Used when progress display is disabled
    """

    def __init__(self, *args, **kwargs):
        pass

    def update(self, current: int, total: int):
        pass

    def close(self):
        pass


def create_progress_bar(
    desc: str = "Working",
    total: Optional[int] = None,
    leave: bool = True,
    simple: bool = False,
    disable: bool = False
) -> ProgressBar:
    """
    Factory function to create appropriate progress bar

    Args:
        desc: Description text
        total: Total units
        leave: Leave the tqdm bar on screen after completion
        simple: Force the plain-text bar
        disable: Disable progress output completely

    Returns:
        ProgressBar instance (Tqdm, Simple, or NoOp)
    """
    if disable:
        return NoOpProgressBar()

    if simple or not HAS_TQDM:
        return SimpleProgressBar(desc=desc, total=total)

    try:
        return TqdmProgressBar(desc=desc, total=total, leave=leave)
    except Exception as e:
        logger.warning(f"Could not create tqdm progress bar: {e}")
        return SimpleProgressBar(desc=desc, total=total)
