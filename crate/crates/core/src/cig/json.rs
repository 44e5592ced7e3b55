use serde::{Deserialize, Serialize};

use super::{Cig, CigEdge, CigNode, Classification, InterfaceKind};
use crate::error::{Error, Result};
use crate::interface::ServiceName;
use crate::statechart::StateRef;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CigDoc {
    components: Vec<String>,
    removed: Vec<StateRef>,
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    component: String,
    state: String,
    kinds: Vec<KindDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: StateRef,
    to: StateRef,
    service: ServiceName,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
enum KindDoc {
    P,
    R,
    G,
}

impl From<InterfaceKind> for KindDoc {
    fn from(k: InterfaceKind) -> Self {
        match k {
            InterfaceKind::Provided => KindDoc::P,
            InterfaceKind::Required => KindDoc::R,
            InterfaceKind::Intermediate => KindDoc::G,
        }
    }
}

impl From<KindDoc> for InterfaceKind {
    fn from(k: KindDoc) -> Self {
        match k {
            KindDoc::P => InterfaceKind::Provided,
            KindDoc::R => InterfaceKind::Required,
            KindDoc::G => InterfaceKind::Intermediate,
        }
    }
}

/// Pretty-printed (2-space) JSON with a trailing newline.
pub fn cig_to_json(cig: &Cig) -> String {
    let doc = CigDoc {
        components: cig.components.clone(),
        removed: cig.removed.clone(),
        nodes: cig
            .nodes
            .iter()
            .map(|n| NodeDoc {
                component: n.component.clone(),
                state: n.state.clone(),
                kinds: n
                    .classification
                    .kinds()
                    .into_iter()
                    .map(Into::into)
                    .collect(),
            })
            .collect(),
        edges: cig
            .edges
            .iter()
            .map(|e| EdgeDoc {
                from: e.from.clone(),
                to: e.to.clone(),
                service: e.service.clone(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("cig serializes");
    out.push('\n');
    out
}

pub fn cig_from_json(text: &str) -> Result<Cig> {
    let doc: CigDoc = serde_json::from_str(text)?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| {
            let kinds: Vec<InterfaceKind> = n.kinds.iter().map(|k| (*k).into()).collect();
            let classification = Classification::from_kinds(&kinds).ok_or_else(|| {
                Error::Schema(format!(
                    "node {}.{} has invalid kinds",
                    n.component, n.state
                ))
            })?;
            Ok(CigNode {
                component: n.component,
                state: n.state,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| CigEdge {
            from: e.from,
            to: e.to,
            service: e.service,
        })
        .collect();
    Cig::new(doc.components, doc.removed, nodes, edges)
}
