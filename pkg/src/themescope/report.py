"""Session report assembly shared by the API and the CLI exporter."""

from __future__ import annotations

from .corpus import CorpusBundle
from .excerpt import excerpt_map_for_selection, excerpt_payload
from .lda import TopicModel
from .sessions import Session, session_payload
from .wheels import build_multi_theme_wheel, wheel_payload


def excerpt_body(model: TopicModel, selection, *,
                 theta_min: float, tau: float, max_selection: int) -> dict:
    """Excerpt map plus the selection's multi-theme wheels.

    Wheels are colored by the excerpt map's fresh palette so Tool 2 views
    stay internally consistent; chunks dominated by themes outside the
    excerpt subset carry a null color.
    """
    excerpt = excerpt_map_for_selection(
        model, selection, theta_min=theta_min, tau=tau,
        max_selection=max_selection)
    wheels = [wheel_payload(build_multi_theme_wheel(model, d, excerpt.map))
              for d in selection]
    return {"excerpt": excerpt_payload(excerpt), "wheels": wheels}


def paper_record(bundle: CorpusBundle, doc_id: str, visible: bool) -> dict:
    """The only place a paper title enters a payload."""
    title = bundle.document(doc_id).title if visible else None
    return {"doc_id": doc_id, "title": title}


def session_report(model: TopicModel, bundle: CorpusBundle, session: Session,
                   *, theta_min: float, tau: float, max_selection: int,
                   body: dict | None = None) -> dict:
    """Selection, excerpt map, wheels, and strategy as one document.

    Titles appear only if the session has been revealed.  `body` lets a
    caller reuse an already computed excerpt response.
    """
    report = {
        "session": session_payload(session),
        "papers": [paper_record(bundle, d, session.titles_revealed)
                   for d in session.selection],
    }
    if session.selection:
        if body is None:
            body = excerpt_body(model, session.selection,
                                theta_min=theta_min, tau=tau,
                                max_selection=max_selection)
        report["excerpt"] = body["excerpt"]
        report["wheels"] = body["wheels"]
    else:
        report["excerpt"] = None
        report["wheels"] = []
    return report
