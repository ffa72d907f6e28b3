from .point_utils import Point, PointUtils
from .search_utils import SearchUtils
from .logger import get_logger, configure_logging
