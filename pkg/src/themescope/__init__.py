"""Corpus thematic exploration: LDA themes on a hex map, per-paper theme
wheels, excerpt maps for selected paper sets, and reading-strategy sessions.
"""

__version__ = "0.1.0"

from .corpus import build_bundle, load_bundle, load_corpus, save_bundle
from .excerpt import excerpt_map_for_selection, extract_relevant_themes
from .lda import load_model, save_model, train_lda
from .thememap import build_theme_map, load_theme_map, save_theme_map
from .wheels import (build_multi_theme_wheel, build_single_theme_wheel,
                     rank_papers_for_theme)

__all__ = [
    "__version__",
    "build_bundle", "load_bundle", "load_corpus", "save_bundle",
    "excerpt_map_for_selection", "extract_relevant_themes",
    "load_model", "save_model", "train_lda",
    "build_theme_map", "load_theme_map", "save_theme_map",
    "build_multi_theme_wheel", "build_single_theme_wheel",
    "rank_papers_for_theme",
]
