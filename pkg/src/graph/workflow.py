import logging
from typing import Any, Dict, Optional

from langgraph.graph import END, StateGraph
from pydantic import BaseModel

from src.agents.searcher import SearcherAgent
from src.agents.twister import TwisterAgent
from src.errors import GraphicRegionsError, error_from_tag
from src.models.certificate import Certificate, HostileCertificate, WitnessCertificate
from src.models.sequence import LabeledGraph
from src.models.trail import AlternatingTrail

logger = logging.getLogger(__name__)


class CertifyState(BaseModel):
    """State model for the certify workflow."""
    graph: LabeledGraph
    p: int
    q: int
    trail: Optional[AlternatingTrail] = None
    hostile: Optional[HostileCertificate] = None
    error: str = ""
    error_message: str = ""


class CertifyWorkflow:
    """LangGraph workflow: witness-trail search first, hostile construction when the search comes up empty."""

    def __init__(self, max_len: int = 11):
        self.max_len = max_len
        self.searcher_agent = SearcherAgent(max_len)
        self.twister_agent = TwisterAgent(strict=max_len >= 11)
        self.graph = self._build_graph()

    def _build_graph(self):
        graph = StateGraph(CertifyState)

        graph.add_node("searcher", self._searcher_node)
        graph.add_node("twister", self._twister_node)

        def searcher_condition(state: CertifyState) -> str:
            if state.error or state.trail is not None:
                return END
            return "twister"
        graph.add_conditional_edges("searcher", searcher_condition)
        graph.add_edge("twister", END)

        graph.set_entry_point("searcher")

        return graph.compile()

    def _searcher_node(self, state: CertifyState) -> Dict[str, Any]:
        try:
            return {"trail": self.searcher_agent.search(state.graph, state.p, state.q)}
        except GraphicRegionsError as e:
            return {"error": e.tag, "error_message": str(e)}

    def _twister_node(self, state: CertifyState) -> Dict[str, Any]:
        try:
            return {"hostile": self.twister_agent.construct(state.graph, state.p, state.q)}
        except GraphicRegionsError as e:
            return {"error": e.tag, "error_message": str(e)}

    def run(self, g: LabeledGraph, p: int, q: int) -> Certificate:
        result = self.graph.invoke(CertifyState(graph=g, p=p, q=q))
        if result.get("error"):
            raise error_from_tag(result["error"], result.get("error_message", ""))
        if result.get("trail") is not None:
            return WitnessCertificate(trail=result["trail"])
        return result["hostile"]
