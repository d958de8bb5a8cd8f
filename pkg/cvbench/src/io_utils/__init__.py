from .io_utils import (
    Dataset,
    DatasetHandler,
    DescriptorSetSpec,
    ResponseKind,
    ResponseVector,
    binarize_response,
    load_dataset,
    validate_response,
    write_dataset,
)

__all__ = [
    'Dataset',
    'DatasetHandler',
    'DescriptorSetSpec',
    'ResponseKind',
    'ResponseVector',
    'binarize_response',
    'load_dataset',
    'validate_response',
    'write_dataset',
]
