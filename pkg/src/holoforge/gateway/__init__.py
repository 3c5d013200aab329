from .config import ENV_PREFIX, GatewayConfig, load_config
from .service import create_app

__all__ = ["ENV_PREFIX", "GatewayConfig", "load_config", "create_app"]
