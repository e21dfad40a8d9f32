use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::error::{OntologyError, ValidationIssue};
use super::model::*;

/// Maps a surface label onto the key used for lookups.
///
/// The graph indexes every label and synonym under the keys produced here, so
/// callers that search by lemma should load the graph with a lemmatizing
/// normalizer.
pub trait LabelNormalizer {
    fn keys(&self, surface: &str) -> Vec<String>;
}

/// Case-folding only.
#[derive(Debug, Default, Clone, Copy)]
pub struct Lowercase;

impl LabelNormalizer for Lowercase {
    fn keys(&self, surface: &str) -> Vec<String> {
        vec![fold(surface)]
    }
}

pub(crate) fn fold(surface: &str) -> String {
    surface.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Immutable, validated domain ontology.
#[derive(Debug, Clone)]
pub struct OntologyGraph {
    classes: BTreeMap<String, OntologyClass>,
    individuals: BTreeMap<String, Individual>,
    object_properties: BTreeMap<String, ObjectProperty>,
    data_properties: BTreeMap<String, DataProperty>,
    product_root: String,
    service_root: String,
    // parent -> sorted children
    children: BTreeMap<String, Vec<String>>,
    // class -> sorted direct individuals
    members: BTreeMap<String, Vec<String>>,
    // class -> sorted, deduplicated ranges of object properties whose domain it is
    relation_targets: BTreeMap<String, Vec<String>>,
    node_keys: HashMap<String, Vec<String>>,
    key_index: HashMap<String, Vec<String>>,
    property_keys: HashMap<String, Vec<String>>,
}

impl OntologyGraph {
    pub fn from_json(text: &str) -> Result<Self, OntologyError> {
        Self::from_json_with(text, &Lowercase)
    }

    pub fn from_json_with(text: &str, normalizer: &dyn LabelNormalizer) -> Result<Self, OntologyError> {
        let doc = parse_document(text)?;
        Self::from_document(doc, normalizer)
    }

    /// Validates `doc` and builds every index. All violations are reported at once.
    pub fn from_document(
        mut doc: OntologyDocument,
        normalizer: &dyn LabelNormalizer,
    ) -> Result<Self, OntologyError> {
        for c in &mut doc.classes {
            if c.label.is_empty() {
                c.label = c.id.clone();
            }
        }
        for i in &mut doc.individuals {
            if i.label.is_empty() {
                i.label = i.id.clone();
            }
        }
        for p in &mut doc.object_properties {
            if p.label.is_empty() {
                p.label = p.id.clone();
            }
        }
        for p in &mut doc.data_properties {
            if p.label.is_empty() {
                p.label = p.id.clone();
            }
        }

        let mut issues = Vec::new();
        let mut seen_nodes = HashSet::new();
        let mut classes = BTreeMap::new();
        for c in doc.classes {
            if !seen_nodes.insert(c.id.clone()) {
                issues.push(ValidationIssue::DuplicateId(c.id.clone()));
                continue;
            }
            classes.insert(c.id.clone(), c);
        }
        let mut individuals = BTreeMap::new();
        for i in doc.individuals {
            if !seen_nodes.insert(i.id.clone()) {
                issues.push(ValidationIssue::DuplicateId(i.id.clone()));
                continue;
            }
            individuals.insert(i.id.clone(), i);
        }
        let mut object_properties = BTreeMap::new();
        for p in doc.object_properties {
            if object_properties.contains_key(&p.id) {
                issues.push(ValidationIssue::DuplicateId(p.id.clone()));
                continue;
            }
            object_properties.insert(p.id.clone(), p);
        }
        let mut data_properties = BTreeMap::new();
        for p in doc.data_properties {
            if data_properties.contains_key(&p.id) {
                issues.push(ValidationIssue::DuplicateId(p.id.clone()));
                continue;
            }
            data_properties.insert(p.id.clone(), p);
        }

        let product_root = doc.product_root.unwrap_or_else(|| DEFAULT_PRODUCT_ROOT.to_owned());
        let service_root = doc.service_root.unwrap_or_else(|| DEFAULT_SERVICE_ROOT.to_owned());

        let mut children: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for c in classes.values() {
            for p in &c.parents {
                if classes.contains_key(p) {
                    children.entry(p.clone()).or_default().push(c.id.clone());
                } else {
                    issues.push(ValidationIssue::DanglingReference {
                        from: c.id.clone(),
                        field: "parents",
                        target: p.clone(),
                    });
                }
            }
        }
        for list in children.values_mut() {
            list.sort();
            list.dedup();
        }

        if let Some(cycle) = find_cycle(&classes) {
            issues.push(ValidationIssue::SubclassCycle(cycle));
        }

        let mut members: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for i in individuals.values() {
            if classes.contains_key(&i.class_id) {
                members.entry(i.class_id.clone()).or_default().push(i.id.clone());
            } else {
                issues.push(ValidationIssue::DanglingReference {
                    from: i.id.clone(),
                    field: "class",
                    target: i.class_id.clone(),
                });
            }
        }

        let mut relation_targets: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for p in object_properties.values() {
            let mut ok = true;
            for (field, target) in [("domain", &p.domain_class), ("range", &p.range_class)] {
                if !classes.contains_key(target) {
                    ok = false;
                    issues.push(ValidationIssue::DanglingReference {
                        from: p.id.clone(),
                        field,
                        target: target.clone(),
                    });
                }
            }
            if ok {
                relation_targets
                    .entry(p.domain_class.clone())
                    .or_default()
                    .push(p.range_class.clone());
            }
        }
        for list in relation_targets.values_mut() {
            list.sort();
            list.dedup();
        }
        for p in data_properties.values() {
            if !classes.contains_key(&p.domain_class) {
                issues.push(ValidationIssue::DanglingReference {
                    from: p.id.clone(),
                    field: "domain",
                    target: p.domain_class.clone(),
                });
            }
        }

        let mut graph = OntologyGraph {
            classes,
            individuals,
            object_properties,
            data_properties,
            product_root,
            service_root,
            children,
            members,
            relation_targets,
            node_keys: HashMap::new(),
            key_index: HashMap::new(),
            property_keys: HashMap::new(),
        };

        // The remaining checks walk the hierarchy, which is only safe without cycles.
        if !issues.iter().any(|i| matches!(i, ValidationIssue::SubclassCycle(_))) {
            graph.check_hierarchy(&mut issues);
        }
        if !issues.is_empty() {
            return Err(OntologyError::Validation(issues));
        }
        graph.build_indexes(normalizer);
        Ok(graph)
    }

    fn check_hierarchy(&self, issues: &mut Vec<ValidationIssue>) {
        for c in self.classes.values() {
            if c.kind.is_offering() {
                let ancestors = self.ancestor_set(&c.id);
                if !ancestors.contains(&self.product_root) && !ancestors.contains(&self.service_root) {
                    issues.push(ValidationIssue::OfferingOutsideRoots(c.id.clone()));
                }
            }
            self.check_attributes(&c.id, &c.id, &c.attributes, issues);
        }
        for i in self.individuals.values() {
            if self.classes.contains_key(&i.class_id) {
                self.check_attributes(&i.id, &i.class_id, &i.attributes, issues);
            }
        }
    }

    fn check_attributes(
        &self,
        owner: &str,
        class_id: &str,
        attributes: &BTreeMap<String, AttributeValue>,
        issues: &mut Vec<ValidationIssue>,
    ) {
        let mut lineage = self.ancestor_set(class_id);
        lineage.insert(class_id.to_owned());
        for (key, value) in attributes {
            match self.data_properties.get(key) {
                None => issues.push(ValidationIssue::DanglingReference {
                    from: owner.to_owned(),
                    field: "attributes",
                    target: key.clone(),
                }),
                Some(p) if !lineage.contains(&p.domain_class) => {
                    issues.push(ValidationIssue::AttributeOutsideDomain {
                        owner: owner.to_owned(),
                        property: key.clone(),
                    })
                }
                Some(_) => {}
            }
            if let Literal::Number(n) = value.value {
                if !n.is_finite() {
                    issues.push(ValidationIssue::NonFiniteNumber {
                        owner: owner.to_owned(),
                        property: key.clone(),
                    });
                }
            }
        }
    }

    fn build_indexes(&mut self, normalizer: &dyn LabelNormalizer) {
        let mut node_keys = HashMap::new();
        let mut key_index: HashMap<String, Vec<String>> = HashMap::new();
        let mut surfaces: Vec<(String, Vec<String>)> = self
            .classes
            .values()
            .map(|c| {
                let mut s = vec![c.label.clone()];
                s.extend(c.synonyms.iter().cloned());
                (c.id.clone(), s)
            })
            .collect();
        surfaces.extend(
            self.individuals
                .values()
                .map(|i| (i.id.clone(), vec![i.label.clone()])),
        );
        for (id, labels) in surfaces {
            let keys = collect_keys(&labels, normalizer);
            for k in &keys {
                key_index.entry(k.clone()).or_default().push(id.clone());
            }
            node_keys.insert(id, keys);
        }
        for ids in key_index.values_mut() {
            ids.sort();
            ids.dedup();
        }
        let mut property_keys = HashMap::new();
        for p in self.data_properties.values() {
            let mut labels = vec![p.label.clone(), p.id.clone()];
            labels.extend(p.synonyms.iter().cloned());
            property_keys.insert(p.id.clone(), collect_keys(&labels, normalizer));
        }
        self.node_keys = node_keys;
        self.key_index = key_index;
        self.property_keys = property_keys;
    }

    // ---- accessors -------------------------------------------------------

    pub fn classes(&self) -> impl Iterator<Item = &OntologyClass> {
        self.classes.values()
    }

    pub fn individuals(&self) -> impl Iterator<Item = &Individual> {
        self.individuals.values()
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &ObjectProperty> {
        self.object_properties.values()
    }

    pub fn data_properties(&self) -> impl Iterator<Item = &DataProperty> {
        self.data_properties.values()
    }

    pub fn class(&self, id: &str) -> Option<&OntologyClass> {
        self.classes.get(id)
    }

    pub fn individual(&self, id: &str) -> Option<&Individual> {
        self.individuals.get(id)
    }

    pub fn data_property(&self, id: &str) -> Option<&DataProperty> {
        self.data_properties.get(id)
    }

    pub fn node(&self, id: &str) -> Option<NodeRef<'_>> {
        self.classes
            .get(id)
            .map(NodeRef::Class)
            .or_else(|| self.individuals.get(id).map(NodeRef::Individual))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.classes.contains_key(id) || self.individuals.contains_key(id)
    }

    pub fn node_count(&self) -> usize {
        self.classes.len() + self.individuals.len()
    }

    pub fn label<'a>(&'a self, id: &'a str) -> &'a str {
        self.node(id).map(|n| n.label()).unwrap_or(id)
    }

    pub fn product_root(&self) -> &str {
        &self.product_root
    }

    pub fn service_root(&self) -> &str {
        &self.service_root
    }

    pub fn is_root(&self, id: &str) -> bool {
        id == self.product_root || id == self.service_root
    }

    /// Lookup keys (normalized label and synonyms) of a node.
    pub fn keys_of(&self, id: &str) -> &[String] {
        self.node_keys.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Nodes whose label or synonym normalizes to `key`.
    pub fn nodes_with_key(&self, key: &str) -> &[String] {
        self.key_index.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Data properties whose label, id or synonym normalizes to `key`, in id order.
    pub fn properties_with_key(&self, key: &str) -> Vec<&DataProperty> {
        self.data_properties
            .values()
            .filter(|p| self.property_keys[&p.id].iter().any(|k| k == key))
            .collect()
    }

    pub fn property_keys(&self, id: &str) -> &[String] {
        self.property_keys.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn class_of(&self, individual: &str) -> Option<&str> {
        self.individuals.get(individual).map(|i| i.class_id.as_str())
    }

    // ---- hierarchy -------------------------------------------------------

    fn require_class(&self, id: &str) -> Result<&OntologyClass, OntologyError> {
        self.classes
            .get(id)
            .ok_or_else(|| OntologyError::UnknownClass(id.to_owned()))
    }

    pub fn direct_children(&self, class_id: &str) -> &[String] {
        self.children.get(class_id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn direct_members(&self, class_id: &str) -> &[String] {
        self.members.get(class_id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn relation_targets(&self, class_id: &str) -> &[String] {
        self.relation_targets.get(class_id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn subclasses(&self, class_id: &str, direct: bool) -> Result<Vec<String>, OntologyError> {
        self.require_class(class_id)?;
        if direct {
            return Ok(self.direct_children(class_id).to_vec());
        }
        let mut found = BTreeSet::new();
        let mut stack = vec![class_id.to_owned()];
        while let Some(c) = stack.pop() {
            for child in self.direct_children(&c) {
                if found.insert(child.clone()) {
                    stack.push(child.clone());
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    pub fn individuals_of(&self, class_id: &str, transitive: bool) -> Result<Vec<String>, OntologyError> {
        self.require_class(class_id)?;
        let mut out: Vec<String> = self.direct_members(class_id).to_vec();
        if transitive {
            for sub in self.subclasses(class_id, false)? {
                out.extend(self.direct_members(&sub).iter().cloned());
            }
            out.sort();
            out.dedup();
        }
        Ok(out)
    }

    /// Ancestors of a class, nearest first (breadth-first over sorted parents).
    pub fn ancestors(&self, class_id: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut queue: VecDeque<String> = VecDeque::new();
        if let Some(c) = self.classes.get(class_id) {
            let mut parents = c.parents.clone();
            parents.sort();
            queue.extend(parents);
        }
        while let Some(p) = queue.pop_front() {
            if !seen.insert(p.clone()) {
                continue;
            }
            if let Some(c) = self.classes.get(&p) {
                let mut parents = c.parents.clone();
                parents.sort();
                queue.extend(parents);
            }
            out.push(p);
        }
        out
    }

    fn ancestor_set(&self, class_id: &str) -> HashSet<String> {
        self.ancestors(class_id).into_iter().collect()
    }

    /// True when `class_id` equals `ancestor` or descends from it.
    pub fn is_a(&self, class_id: &str, ancestor: &str) -> bool {
        class_id == ancestor || self.ancestors(class_id).iter().any(|a| a == ancestor)
    }

    /// True when the individual belongs to `class_id` or one of its subclasses.
    pub fn is_instance_of(&self, individual: &str, class_id: &str) -> bool {
        self.class_of(individual)
            .is_some_and(|c| self.is_a(c, class_id))
    }

    pub fn is_offering(&self, class_id: &str) -> bool {
        self.classes.get(class_id).is_some_and(|c| c.kind.is_offering())
    }

    /// An offering is available when at least one individual instantiates it.
    pub fn is_available(&self, class_id: &str) -> bool {
        self.individuals_of(class_id, true)
            .map(|v| !v.is_empty())
            .unwrap_or(false)
    }

    /// Top-level offerings: available product/service classes directly under a root.
    pub fn top_level_offerings(&self) -> Vec<String> {
        let mut out: Vec<String> = [&self.product_root, &self.service_root]
            .iter()
            .flat_map(|r| self.direct_children(r).iter())
            .filter(|c| self.is_offering(c) && self.is_available(c))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Ordered successors used by breadth-first search: subclasses, then
    /// individuals, then targets of object properties leaving the node.
    pub fn search_successors(&self, id: &str) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut seen = HashSet::new();
        let groups = [
            self.direct_children(id),
            self.direct_members(id),
            self.relation_targets(id),
        ];
        for group in groups {
            for n in group {
                if seen.insert(n.as_str()) {
                    out.push(n.clone());
                }
            }
        }
        out
    }

    /// Breadth-first search below `root` for the first node carrying `target`
    /// among its lookup keys, ignoring nodes in `skip`.
    pub fn bfs_under(
        &self,
        root: &str,
        target: &str,
        skip: &HashSet<String>,
    ) -> Result<Option<String>, OntologyError> {
        self.bfs_find(root, skip, |node| self.keys_of(node).iter().any(|k| k == target))
    }

    /// Breadth-first search below `root` (same order as `bfs_under`) for the
    /// first node outside `skip` accepted by `accept`.
    pub fn bfs_find(
        &self,
        root: &str,
        skip: &HashSet<String>,
        accept: impl Fn(&str) -> bool,
    ) -> Result<Option<String>, OntologyError> {
        if !self.contains(root) {
            return Err(OntologyError::UnknownNode(root.to_owned()));
        }
        let mut visited = HashSet::new();
        let mut queue = VecDeque::from([root.to_owned()]);
        visited.insert(root.to_owned());
        while let Some(node) = queue.pop_front() {
            if !skip.contains(&node) && accept(&node) {
                return Ok(Some(node));
            }
            for next in self.search_successors(&node) {
                if visited.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Looks up an attribute by relation key on the node, then on its class
    /// and that class's ancestors, nearest first.
    pub fn lookup_attribute(
        &self,
        node_id: &str,
        relation: &str,
    ) -> Result<Option<AttributeHit>, OntologyError> {
        let node = self
            .node(node_id)
            .ok_or_else(|| OntologyError::UnknownNode(node_id.to_owned()))?;
        Ok(self.attribute_chain(node).into_iter().find_map(|holder| {
            let attrs = self.node(&holder)?.attributes();
            attrs.iter().find_map(|(prop, value)| {
                self.property_keys(prop)
                    .iter()
                    .any(|k| k == relation)
                    .then(|| AttributeHit {
                        holder: holder.clone(),
                        property: prop.clone(),
                        value: value.clone(),
                    })
            })
        }))
    }

    /// Looks up a specific data property id along the same chain as `lookup_attribute`.
    pub fn lookup_property(&self, node_id: &str, property: &str) -> Option<AttributeHit> {
        let node = self.node(node_id)?;
        self.attribute_chain(node).into_iter().find_map(|holder| {
            let value = self.node(&holder)?.attributes().get(property)?;
            Some(AttributeHit {
                holder: holder.clone(),
                property: property.to_owned(),
                value: value.clone(),
            })
        })
    }

    /// Every data property that resolves to a value for the node, in id order.
    pub fn available_properties(&self, node_id: &str) -> Vec<String> {
        let Some(node) = self.node(node_id) else {
            return Vec::new();
        };
        let mut props = BTreeSet::new();
        for holder in self.attribute_chain(node) {
            if let Some(n) = self.node(&holder) {
                props.extend(n.attributes().keys().cloned());
            }
        }
        props.into_iter().collect()
    }

    fn attribute_chain(&self, node: NodeRef<'_>) -> Vec<String> {
        let class_id = match node {
            NodeRef::Class(c) => c.id.as_str(),
            NodeRef::Individual(i) => i.class_id.as_str(),
        };
        let mut chain = Vec::new();
        if node.is_individual() {
            chain.push(node.id().to_owned());
        }
        chain.push(class_id.to_owned());
        chain.extend(self.ancestors(class_id));
        chain
    }

    /// Back to the document form; loading the result yields identical entity maps.
    pub fn to_document(&self) -> OntologyDocument {
        OntologyDocument {
            classes: self.classes.values().cloned().collect(),
            individuals: self.individuals.values().cloned().collect(),
            object_properties: self.object_properties.values().cloned().collect(),
            data_properties: self.data_properties.values().cloned().collect(),
            product_root: Some(self.product_root.clone()),
            service_root: Some(self.service_root.clone()),
        }
    }

    /// Classes in an order where parents precede children.
    pub fn topological_order(&self) -> Vec<String> {
        let mut indegree: BTreeMap<&str, usize> = self
            .classes
            .values()
            .map(|c| (c.id.as_str(), c.parents.len()))
            .collect();
        let mut ready: VecDeque<&str> = indegree
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(id, _)| *id)
            .collect();
        let mut out = Vec::new();
        while let Some(id) = ready.pop_front() {
            out.push(id.to_owned());
            for child in self.direct_children(id) {
                let d = indegree.get_mut(child.as_str()).expect("child indexed");
                *d -= 1;
                if *d == 0 {
                    ready.push_back(child);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeHit {
    /// Node the value was found on (the queried node or an ancestor class).
    pub holder: String,
    pub property: String,
    pub value: AttributeValue,
}

fn collect_keys(labels: &[String], normalizer: &dyn LabelNormalizer) -> Vec<String> {
    let mut keys = Vec::new();
    for l in labels {
        for k in std::iter::once(fold(l)).chain(normalizer.keys(l)) {
            if !k.is_empty() && !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    keys
}

pub fn parse_document(text: &str) -> Result<OntologyDocument, OntologyError> {
    serde_json::from_str(text).map_err(|e| OntologyError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn find_cycle(classes: &BTreeMap<String, OntologyClass>) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit(
        id: &str,
        classes: &BTreeMap<String, OntologyClass>,
        marks: &mut HashMap<String, Mark>,
        path: &mut Vec<String>,
    ) -> Option<Vec<String>> {
        match marks.get(id) {
            Some(Mark::Done) => return None,
            Some(Mark::Open) => {
                let start = path.iter().position(|p| p == id).unwrap_or(0);
                return Some(path[start..].to_vec());
            }
            None => {}
        }
        marks.insert(id.to_owned(), Mark::Open);
        path.push(id.to_owned());
        if let Some(c) = classes.get(id) {
            for p in &c.parents {
                if classes.contains_key(p) {
                    if let Some(cycle) = visit(p, classes, marks, path) {
                        return Some(cycle);
                    }
                }
            }
        }
        path.pop();
        marks.insert(id.to_owned(), Mark::Done);
        None
    }
    let mut marks = HashMap::new();
    for id in classes.keys() {
        let mut path = Vec::new();
        if let Some(cycle) = visit(id, classes, &mut marks, &mut path) {
            return Some(cycle);
        }
    }
    None
}
