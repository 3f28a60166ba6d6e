from .algebra import router as algebra_router
from .simplicial import router as simplicial_router
from .tft import router as tft_router

__all__ = ["algebra_router", "simplicial_router", "tft_router"]
