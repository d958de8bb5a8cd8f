from .anova import AnovaRow, AnovaTable, anova_blocked, format_p, render_anova_text
from .distributions import (betainc, chi_bounds, erf, erfc, f_cdf, f_sf, gammainc, gammaincc,
                            normal_cdf, normal_pdf, studentized_range_cdf, studentized_range_sf,
                            t_cdf)
from .tukey import Bucket, PairwiseComparison, comparisons_frame, tukey_kramer

__all__ = [
    'AnovaRow',
    'AnovaTable',
    'anova_blocked',
    'format_p',
    'render_anova_text',
    'betainc',
    'chi_bounds',
    'erf',
    'erfc',
    'f_cdf',
    'f_sf',
    'gammainc',
    'gammaincc',
    'normal_cdf',
    'normal_pdf',
    'studentized_range_cdf',
    'studentized_range_sf',
    't_cdf',
    'Bucket',
    'PairwiseComparison',
    'comparisons_frame',
    'tukey_kramer',
]
