from .mcs import (BUCKET_COLORS, BUCKET_LABELS, STATUS_BEST, STATUS_EXCLUDED, STATUS_MARGINAL,
                  McsMatrix, best_performers, build_mcs, render_mcs_svg, summary_table)

__all__ = [
    'BUCKET_COLORS',
    'BUCKET_LABELS',
    'STATUS_BEST',
    'STATUS_EXCLUDED',
    'STATUS_MARGINAL',
    'McsMatrix',
    'best_performers',
    'build_mcs',
    'render_mcs_svg',
    'summary_table',
]
