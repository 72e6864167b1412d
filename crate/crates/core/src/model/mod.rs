//! Corpus-wide model: packages, classes, inheritance and call graphs.

mod metrics;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::corpus::ParsedCorpus;
use crate::parser::{ClassDecl, Receiver};

pub use metrics::{
    classify_method, compute_cohesion, compute_metrics, ClassMetrics, KindHistogram, MethodKind, Metrics, PackageMetrics, Totals,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackageRecord {
    pub name: String,
    /// Indices into [`CodeModel::classes`], ascending.
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub decl: ClassDecl,
    pub package: usize,
    /// Corpus-relative path of the declaring file.
    pub file: String,
}

impl ClassRecord {
    pub fn name(&self) -> &str {
        &self.decl.name
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodId {
    pub class: usize,
    pub method: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CallEdge {
    pub caller: MethodId,
    pub callee: MethodId,
    pub count: usize,
}

/// An inheritance edge, child first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InheritanceEdge {
    pub child: usize,
    pub parent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CodeModel {
    /// Sorted by name.
    pub packages: Vec<PackageRecord>,
    /// Sorted by (package name, class name).
    pub classes: Vec<ClassRecord>,
    /// Sorted, no duplicates.
    pub inheritance_edges: Vec<InheritanceEdge>,
    /// Sorted by (caller, callee).
    pub call_edges: Vec<CallEdge>,
    pub unresolved_supers: Vec<(usize, String)>,
    /// Paths of the parsed files, in corpus order.
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate class `{name}` in package `{package}`")]
    DuplicateClassName { package: String, name: String },
    #[error("inheritance cycle: {}", .0.join(" -> "))]
    InheritanceCycle(Vec<String>),
}

/// Groups the parsed declarations by package. Graphs are left empty.
pub fn build_model(corpus: &ParsedCorpus) -> Result<CodeModel, ModelError> {
    let mut classes: Vec<(ClassDecl, String)> = corpus
        .files
        .iter()
        .flat_map(|f| f.classes.iter().map(move |c| (c.clone(), f.path.clone())))
        .collect();
    classes.sort_by(|a, b| (a.0.package_name.as_str(), a.0.name.as_str()).cmp(&(b.0.package_name.as_str(), b.0.name.as_str())));
    for pair in classes.windows(2) {
        if pair[0].0.package_name == pair[1].0.package_name && pair[0].0.name == pair[1].0.name {
            return Err(ModelError::DuplicateClassName {
                package: pair[0].0.package_name.clone(),
                name: pair[0].0.name.clone(),
            });
        }
    }

    let mut model = CodeModel {
        files: corpus.files.iter().map(|f| f.path.clone()).collect(),
        ..CodeModel::default()
    };
    for (index, (decl, file)) in classes.into_iter().enumerate() {
        if model.packages.last().is_none_or(|p| p.name != decl.package_name) {
            model.packages.push(PackageRecord {
                name: decl.package_name.clone(),
                classes: Vec::new(),
            });
        }
        let package = model.packages.len() - 1;
        model.packages[package].classes.push(index);
        model.classes.push(ClassRecord { decl, package, file });
    }
    Ok(model)
}

impl CodeModel {
    /// Builds the model and resolves both graphs.
    pub fn from_corpus(corpus: &ParsedCorpus) -> Result<CodeModel, ModelError> {
        let mut model = build_model(corpus)?;
        model.resolve_inheritance()?;
        model.resolve_calls();
        Ok(model)
    }

    pub fn method_count(&self) -> usize {
        self.classes.iter().map(|c| c.decl.methods.len()).sum()
    }

    pub fn package_name(&self, class: usize) -> &str {
        &self.packages[self.classes[class].package].name
    }

    /// Parents of each class, ascending.
    pub fn parents(&self) -> Vec<Vec<usize>> {
        let mut parents = vec![Vec::new(); self.classes.len()];
        for e in &self.inheritance_edges {
            parents[e.child].push(e.parent);
        }
        parents
    }

    /// Resolves a type name as written in `from_package`.
    ///
    /// Qualified names must match a package and class exactly (or a nested
    /// class of the same package). Simple names are looked up in the same
    /// package first, then by unique simple name across the corpus.
    pub fn resolve_type(&self, written: &str, from_package: usize) -> Option<usize> {
        let same_package = &self.packages[from_package].classes;
        if let Some(&hit) = same_package.iter().find(|&&c| self.classes[c].decl.name == written) {
            return Some(hit);
        }
        if let Some((prefix, simple)) = written.rsplit_once('.') {
            return self
                .packages
                .iter()
                .find(|p| p.name == prefix)
                .and_then(|p| p.classes.iter().copied().find(|&c| self.classes[c].decl.name == simple));
        }
        let nested: Vec<usize> = same_package
            .iter()
            .copied()
            .filter(|&c| self.classes[c].decl.simple_name() == written)
            .collect();
        if nested.len() == 1 {
            return Some(nested[0]);
        }
        if nested.len() > 1 {
            return None;
        }
        let global: Vec<usize> = (0..self.classes.len())
            .filter(|&c| self.classes[c].decl.simple_name() == written)
            .collect();
        (global.len() == 1).then(|| global[0])
    }

    /// Fills `inheritance_edges` and `unresolved_supers`, then rejects cycles.
    pub fn resolve_inheritance(&mut self) -> Result<(), ModelError> {
        let mut edges = BTreeSet::new();
        let mut unresolved = Vec::new();
        for (child, class) in self.classes.iter().enumerate() {
            for written in class.decl.supertypes() {
                match self.resolve_type(written, class.package) {
                    Some(parent) => {
                        edges.insert(InheritanceEdge { child, parent });
                    }
                    None => unresolved.push((child, written.to_owned())),
                }
            }
        }
        self.inheritance_edges = edges.into_iter().collect();
        self.unresolved_supers = unresolved;
        if let Some(cycle) = find_cycle(self.classes.len(), &self.inheritance_edges) {
            return Err(ModelError::InheritanceCycle(
                cycle.into_iter().map(|c| self.classes[c].decl.name.clone()).collect(),
            ));
        }
        Ok(())
    }

    /// Ancestors in order of distance, nearest first; ties broken by index.
    pub fn ancestors(&self, class: usize, parents: &[Vec<usize>]) -> Vec<usize> {
        let mut seen = BTreeSet::from([class]);
        let mut order = Vec::new();
        let mut queue = VecDeque::from([class]);
        while let Some(c) = queue.pop_front() {
            for &p in &parents[c] {
                if seen.insert(p) {
                    order.push(p);
                    queue.push_back(p);
                }
            }
        }
        order
    }

    fn find_method(&self, class: usize, name: &str, parents: &[Vec<usize>]) -> Option<MethodId> {
        self.find_method_in(std::iter::once(class).chain(self.ancestors(class, parents)), name)
    }

    fn find_method_in(&self, classes: impl IntoIterator<Item = usize>, name: &str) -> Option<MethodId> {
        classes.into_iter().find_map(|c| {
            self.classes[c]
                .decl
                .methods
                .iter()
                .position(|m| m.name == name)
                .map(|method| MethodId { class: c, method })
        })
    }

    /// Resolves call sites by name; unresolved sites are dropped and repeated pairs merged.
    pub fn resolve_calls(&mut self) {
        let parents = self.parents();
        let mut counts: BTreeMap<(MethodId, MethodId), usize> = BTreeMap::new();
        for (ci, class) in self.classes.iter().enumerate() {
            for (mi, method) in class.decl.methods.iter().enumerate() {
                let caller = MethodId { class: ci, method: mi };
                for site in &method.call_sites {
                    let target = match &site.receiver {
                        Receiver::ImplicitThis => self.find_method(ci, &site.callee_name, &parents),
                        Receiver::Super => self.find_method_in(self.ancestors(ci, &parents), &site.callee_name),
                        Receiver::Named(var) => self
                            .field_type(ci, var, &parents)
                            .and_then(|t| self.find_method(t, &site.callee_name, &parents)),
                        Receiver::Other => None,
                    };
                    if let Some(callee) = target {
                        *counts.entry((caller, callee)).or_default() += 1;
                    }
                }
            }
        }
        self.call_edges = counts
            .into_iter()
            .map(|((caller, callee), count)| CallEdge { caller, callee, count })
            .collect();
    }

    /// Corpus class named by the declared type of field `var`, searching the class then its ancestors.
    fn field_type(&self, class: usize, var: &str, parents: &[Vec<usize>]) -> Option<usize> {
        // The nearest declaration wins even when its type is external.
        let (record, field) = std::iter::once(class).chain(self.ancestors(class, parents)).find_map(|c| {
            let record = &self.classes[c];
            record.decl.fields.iter().find(|f| f.name == var).map(|f| (record, f))
        })?;
        let ty = field.declared_type.trim();
        if ty.ends_with(']') {
            return None;
        }
        let base = ty.split('<').next().unwrap_or(ty).trim();
        self.resolve_type(base, record.package)
    }
}

/// Longest-path layering over child→parent edges: roots get 0, every other
/// class one more than its deepest parent. `None` if the edges contain a cycle.
pub fn longest_path_layers(n: usize, edges: &[InheritanceEdge]) -> Option<Vec<usize>> {
    let mut children = vec![Vec::new(); n];
    let mut pending_parents = vec![0usize; n];
    for e in edges {
        children[e.parent].push(e.child);
        pending_parents[e.child] += 1;
    }
    let mut layer = vec![0usize; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&c| pending_parents[c] == 0).collect();
    let mut done = 0;
    while let Some(c) = queue.pop_front() {
        done += 1;
        for &child in &children[c] {
            layer[child] = layer[child].max(layer[c] + 1);
            pending_parents[child] -= 1;
            if pending_parents[child] == 0 {
                queue.push_back(child);
            }
        }
    }
    (done == n).then_some(layer)
}

/// One cycle (in edge direction) if any exists, starting from its smallest member.
fn find_cycle(n: usize, edges: &[InheritanceEdge]) -> Option<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for e in edges {
        out[e.child].push(e.parent);
    }
    // 0 = unvisited, 1 = on stack, 2 = finished
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut iters: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = 1;
        stack.push(start);
        while let Some(&mut (node, ref mut next)) = iters.last_mut() {
            if let Some(&succ) = out[node].get(*next) {
                *next += 1;
                match state[succ] {
                    0 => {
                        state[succ] = 1;
                        stack.push(succ);
                        iters.push((succ, 0));
                    }
                    1 => {
                        let from = stack.iter().position(|&s| s == succ).expect("on stack");
                        let mut cycle = stack[from..].to_vec();
                        let min_at = cycle.iter().enumerate().min_by_key(|(_, &c)| c).map(|(i, _)| i).unwrap_or(0);
                        cycle.rotate_left(min_at);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
                iters.pop();
            }
        }
    }
    None
}
