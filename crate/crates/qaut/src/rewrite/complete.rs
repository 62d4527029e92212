//! Critical-pair completion with interreduction.
//!
//! Pending work (declared relations and overlap superpositions) is processed
//! in ascending deglex order of the associated word, with insertion order
//! breaking ties — completion is fully deterministic.  Overlaps whose
//! superposition word exceeds the degree cap are never enqueued; reaching an
//! empty queue therefore certifies confluence only up to that degree, which is
//! exactly what [`SystemStatus::ConfluentUpTo`] records.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;


use super::{RewriteRule, RewriteSystem, SystemStatus};
use crate::error::Error;
use crate::ncalg::{NCPoly, Word};
use crate::scalar::ExactScalar;

/// A derived (or declared) rule, as recorded in completion traces.
#[derive(Clone, Debug)]
pub struct TraceEvent<C: ExactScalar> {
    /// Stable rule identifier.
    pub rule_id: usize,
    /// Leading word of the rule.
    pub lhs: Word,
    /// Replacement polynomial.
    pub rhs: NCPoly<C>,
    /// Rule ids of the overlap parents; `None` for declared relations.
    pub parents: Option<(usize, usize)>,
    /// Degree of the leading word.
    pub degree: usize,
}

/// Summary of a completion run.
#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub status: SystemStatus,
    /// Rules added during this run (before interreduction removals).
    pub rules_added: usize,
    /// Overlap superpositions whose S-polynomials were processed.
    pub pairs_processed: usize,
}

/// Where a pending polynomial comes from.
enum Source<C: ExactScalar> {
    /// A declared relation (or a rule re-enqueued by interreduction).
    Relation(NCPoly<C>),
    /// A proper overlap: `suffix_k(lhs[left]) == prefix_k(lhs[right])`.
    Overlap { left: usize, right: usize, k: usize },
}

struct Pending<C: ExactScalar> {
    key: Word,
    seq: u64,
    src: Source<C>,
}

impl<C: ExactScalar> PartialEq for Pending<C> {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.seq == other.seq
    }
}
impl<C: ExactScalar> Eq for Pending<C> {}
impl<C: ExactScalar> PartialOrd for Pending<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<C: ExactScalar> Ord for Pending<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key).then(self.seq.cmp(&other.seq))
    }
}

/// What to do when a pending polynomial normalizes to a nonzero constant.
#[derive(Clone, Copy, PartialEq, Eq)]
enum ConstantPolicy {
    /// Fail orientation (degenerate declared input).
    Error,
    /// Record that the ideal is the whole algebra and stop.
    Collapse,
}

struct Work<C: ExactScalar> {
    heap: BinaryHeap<Reverse<Pending<C>>>,
    seq: u64,
    rules_added: usize,
    pairs_processed: usize,
}

impl<C: ExactScalar> Work<C> {
    fn new() -> Self {
        Work {
            heap: BinaryHeap::new(),
            seq: 0,
            rules_added: 0,
            pairs_processed: 0,
        }
    }

    fn push(&mut self, key: Word, src: Source<C>) {
        self.heap.push(Reverse(Pending {
            key,
            seq: self.seq,
            src,
        }));
        self.seq += 1;
    }
}

impl<C: ExactScalar> RewriteSystem<C> {
    /// Orientation worker shared by `orient` (no pairs) and `complete`.
    pub(super) fn absorb_relations(
        &mut self,
        relations: Vec<NCPoly<C>>,
        degree_cap: usize,
        rule_cap: usize,
        generate_pairs: bool,
    ) -> Result<(), Error> {
        let mut work = Work::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let key = r.leading().map(|(w, _)| w.clone()).unwrap();
            work.push(key, Source::Relation(r));
        }
        self.run(&mut work, degree_cap, rule_cap, generate_pairs, ConstantPolicy::Error)?;
        Ok(())
    }

    /// Runs degree-bounded completion on the current rule set.
    ///
    /// Enqueues every proper overlap among live rules whose superposition word
    /// has degree ≤ `degree_cap`, then processes the queue to exhaustion,
    /// interreducing after every added rule.  Returns when the queue is empty
    /// (`ConfluentUpTo(degree_cap)`) or the live-rule count exceeds
    /// `rule_cap` (`BudgetExhausted`).
    pub fn complete(&mut self, degree_cap: usize, rule_cap: usize) -> CompletionOutcome {
        let mut work = Work::new();
        let slots: Vec<usize> = self.live_slots();
        for &a in &slots {
            for &b in &slots {
                self.enqueue_overlaps(a, b, degree_cap, &mut work);
            }
        }
        let res = self.run(
            &mut work,
            degree_cap,
            rule_cap,
            true,
            ConstantPolicy::Collapse,
        );
        debug_assert!(res.is_ok(), "Collapse policy never errors");
        self.normalize_rhs();
        CompletionOutcome {
            status: self.status,
            rules_added: work.rules_added,
            pairs_processed: work.pairs_processed,
        }
    }

    fn live_slots(&self) -> Vec<usize> {
        (0..self.rules.len())
            .filter(|&i| self.rules[i].is_some())
            .collect()
    }

    /// Enqueues the proper overlaps of the ordered pair `(left, right)`.
    ///
    /// Inclusions cannot occur between live rules (interreduction removes
    /// them), so only proper overlaps with nonempty flanks are considered.
    fn enqueue_overlaps(
        &self,
        left: usize,
        right: usize,
        degree_cap: usize,
        work: &mut Work<C>,
    ) {
        let l1 = &self.rules[left].as_ref().unwrap().lhs;
        let l2 = &self.rules[right].as_ref().unwrap().lhs;
        let (a, b) = (l1.letters(), l2.letters());
        let kmax = a.len().min(b.len());
        for k in 1..kmax {
            if a[a.len() - k..] == b[..k] {
                let sup_len = a.len() + b.len() - k;
                if sup_len <= degree_cap {
                    let sup = Word::splice(a, &b[k..], &[]);
                    work.push(sup, Source::Overlap { left, right, k });
                }
            }
        }
    }

    /// S-polynomial of a proper overlap: the difference of the two one-step
    /// reductions of the superposition word.
    fn s_polynomial(&self, left: usize, right: usize, k: usize) -> NCPoly<C> {
        let r1 = self.rules[left].as_ref().unwrap();
        let r2 = self.rules[right].as_ref().unwrap();
        let a = &r1.lhs.letters()[..r1.lhs.len() - k];
        let b = &r2.lhs.letters()[k..];
        let mut sp = NCPoly::zero();
        let one = C::one();
        sp.add_scaled_spliced(&one, &[], &r1.rhs, b);
        sp.add_scaled_spliced(&(-one.clone()), a, &r2.rhs, &[]);
        sp
    }

    fn run(
        &mut self,
        work: &mut Work<C>,
        degree_cap: usize,
        rule_cap: usize,
        generate_pairs: bool,
        policy: ConstantPolicy,
    ) -> Result<(), Error> {
        while let Some(Reverse(p)) = work.heap.pop() {
            let (poly, parents) = match p.src {
                Source::Relation(r) => (r, None),
                Source::Overlap { left, right, k } => {
                    // A parent removed by interreduction makes the pair moot:
                    // its relation was re-enqueued, and the rules live at the
                    // end all had their mutual overlaps enqueued on insertion.
                    if self.rules[left].is_none() || self.rules[right].is_none() {
                        continue;
                    }
                    work.pairs_processed += 1;
                    let ids = (
                        self.rules[left].as_ref().unwrap().id,
                        self.rules[right].as_ref().unwrap().id,
                    );
                    (self.s_polynomial(left, right, k), Some(ids))
                }
            };
            let collapsed = self.process(poly, parents, degree_cap, generate_pairs, work, policy)?;
            if collapsed {
                work.heap.clear();
                break;
            }
            if generate_pairs && self.live > rule_cap {
                self.status = SystemStatus::BudgetExhausted {
                    degree_cap,
                    rule_cap,
                };
                return Ok(());
            }
        }
        if generate_pairs && !matches!(self.status, SystemStatus::BudgetExhausted { .. }) {
            self.status = SystemStatus::ConfluentUpTo(degree_cap);
        }
        Ok(())
    }

    /// Normalizes one polynomial and installs it as a rule if nonzero.
    /// Returns `true` if the ideal collapsed to the whole algebra.
    fn process(
        &mut self,
        poly: NCPoly<C>,
        parents: Option<(usize, usize)>,
        degree_cap: usize,
        generate_pairs: bool,
        work: &mut Work<C>,
        policy: ConstantPolicy,
    ) -> Result<bool, Error> {
        let nf = self.reduce(&poly);
        if nf.is_zero() {
            return Ok(false);
        }
        if nf.degree() == Some(0) {
            return match policy {
                ConstantPolicy::Error => Err(Error::UnorientableRelation(format!(
                    "normalizes to the nonzero constant {}",
                    nf.constant_term()
                ))),
                ConstantPolicy::Collapse => {
                    self.collapsed = true;
                    Ok(true)
                }
            };
        }

        let (_, monic) = nf.monic().expect("nonzero polynomial");
        let mut rest = monic;
        let (lhs, _) = rest.pop_leading().expect("nonzero polynomial");
        let rhs = rest.scaled(&-C::one());

        // Interreduce: retire any rule whose leading word contains the new
        // one, re-enqueueing its defining relation.
        for slot in 0..self.rules.len() {
            let retire = match &self.rules[slot] {
                Some(r) => r.lhs.find(lhs.letters(), 0).is_some(),
                None => false,
            };
            if retire {
                let old = self.rules[slot].take().unwrap();
                self.lhs_index.remove(&old.lhs);
                self.live -= 1;
                let key = old.lhs.clone();
                work.push(key, Source::Relation(old.relation()));
            }
        }

        let slot = self.rules.len();
        let id = self.next_id;
        self.next_id += 1;
        if self.record_trace {
            self.trace.push(TraceEvent {
                rule_id: id,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                parents,
                degree: lhs.len(),
            });
        }
        self.max_lhs_len = self.max_lhs_len.max(lhs.len());
        self.lhs_index.insert(lhs.clone(), slot);
        self.rules.push(Some(RewriteRule { lhs, rhs, id }));
        self.live += 1;
        work.rules_added += 1;

        if generate_pairs {
            let live = self.live_slots();
            for &s in &live {
                self.enqueue_overlaps(slot, s, degree_cap, work);
                if s != slot {
                    self.enqueue_overlaps(s, slot, degree_cap, work);
                }
            }
        }
        Ok(false)
    }
}
