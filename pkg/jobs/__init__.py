"""Jobs: tablas de conteos y suites de invariantes"""

from .checks import InvariantSuiteJob
from .tabulation import CountTableJob

__all__ = ["CountTableJob", "InvariantSuiteJob"]
