from .run_config import DatasetSchema, RunConfig, SetSchema

__all__ = ['DatasetSchema', 'RunConfig', 'SetSchema']
