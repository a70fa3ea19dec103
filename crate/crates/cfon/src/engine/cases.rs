//! Labels for every branch of the coloring procedure, counted per run.

use std::collections::BTreeMap;

macro_rules! cases {
    ($($name:ident => $label:literal $(, $opt:ident)?;)*) => {
        /// One branch of an initial or completion phase.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Case { $($name),* }

        impl Case {
            pub const ALL: &'static [Case] = &[$(Case::$name),*];

            pub fn label(self) -> &'static str {
                match self { $(Case::$name => $label),* }
            }

            /// Whether the coverage target includes this branch. Defensive
            /// alternatives and branches unreachable under the fixed tie-breaking are optional.
            pub fn required(self) -> bool {
                match self { $(Case::$name => cases!(@req $($opt)?)),* }
            }
        }
    };
    (@req) => { true };
    (@req optional) => { false };
}

cases! {
    X0Pair => "x0/pair", optional;
    X0Promote => "x0/promote", optional;
    X1InitSingleton => "x1/init/singleton";
    X1InitClique => "x1/init/clique";
    X1CompAllSee => "x1/comp/all-see";
    X1CompSomeMiss => "x1/comp/some-miss";
    X2IndepAInit => "x2/indep/le1/init";
    X2IndepACompDeg1 => "x2/indep/le1/comp/all-deg1";
    X2IndepACompDeg0 => "x2/indep/le1/comp/deg0";
    X2IndepBSingleton => "x2/indep/deg2/singleton";
    X2IndepBEscape => "x2/indep/deg2/escape";
    X2IndepBAllSee => "x2/indep/deg2/all-see";
    X2IndepBCompSeesUnique => "x2/indep/deg2/comp/sees-unique";
    X2IndepBCompAllFree => "x2/indep/deg2/comp/all-free";
    X2IndepBCompMixed => "x2/indep/deg2/comp/mixed";
    X2EdgeDeg2Init => "x2/edge/seeing/deg2";
    X2EdgeSplitInit => "x2/edge/seeing/split";
    X2EdgeShrink => "x2/edge/seeing/shrink";
    X2EdgeCompSeeing => "x2/edge/seeing/comp/seeing";
    X2EdgeCompDeg0 => "x2/edge/seeing/comp/deg0";
    X2EdgeMixedInit => "x2/edge/mixed/init";
    X2EdgeMixedCompSeesA => "x2/edge/mixed/comp/sees-anchor";
    X2EdgeMixedCompOnlyB => "x2/edge/mixed/comp/only-other";
    X2EdgeMixedCompDeg0 => "x2/edge/mixed/comp/deg0";
    IaoSingleton => "indep-le1/singleton";
    IaoTwoColored => "indep-le1/two-colored";
    IaoPairMissing => "indep-le1/one-colored/pair-missing";
    IaoPairShared => "indep-le1/one-colored/pair-shared";
    IaoOneColoredLarge => "indep-le1/one-colored/large";
    IaoUncolored => "indep-le1/uncolored";
    IdSingleton => "indep-deg2/singleton";
    IdSkAllColored => "indep-deg2/sk/all-colored";
    IdSkWitnessed => "indep-deg2/sk/witnessed";
    IdSkReassign => "indep-deg2/sk/reassign";
    IdNoSkEscape => "indep-deg2/no-sk/escape";
    IdNoSkAllSee => "indep-deg2/no-sk/all-see";
    NiPathEnd => "nonindep/path-end";
    NiDense => "nonindep/dense";
    NiPerfectMatching => "nonindep/perfect-matching";
    NiIsoMatching => "nonindep/iso-matching";
    Pm11 => "pm/1.1";
    Pm12AdjSingle => "pm/1.2/adjacent/single";
    Pm12AdjMissV1 => "pm/1.2/adjacent/miss";
    Pm12AdjSeesV1 => "pm/1.2/adjacent/sees";
    Pm12SplitSingle => "pm/1.2/split/single";
    Pm12SplitMissV2 => "pm/1.2/split/miss";
    Pm12SplitSeesV2 => "pm/1.2/split/sees";
    Pm13Single => "pm/1.3/single";
    Pm13Miss => "pm/1.3/miss";
    Pm13AllSee => "pm/1.3/all-see";
    Pm14SingleMiss => "pm/1.4/single/miss";
    Pm14SingleAllSee => "pm/1.4/single/all-see";
    Pm14MissMiss => "pm/1.4/miss/miss";
    Pm14MissAllSee => "pm/1.4/miss/all-see";
    Pm14AllSee => "pm/1.4/all-see";
    Pm2AdjSingle => "pm/2/adjacent/single";
    Pm2AdjMiss => "pm/2/adjacent/miss";
    Pm2AdjAllSee => "pm/2/adjacent/all-see";
    Pm2SplitSingle => "pm/2/split/single";
    Pm2SplitMiss => "pm/2/split/miss";
    Pm2SplitAllSee => "pm/2/split/all-see";
    Pm3Single => "pm/3/single";
    Pm3Miss => "pm/3/miss";
    Pm3AllSee => "pm/3/all-see";
    Iso1Single => "iso/1/single";
    Iso1Sk => "iso/1/sk";
    Iso1Miss => "iso/1/miss";
    Iso1AllSee => "iso/1/all-see";
    Iso2Single => "iso/2/single";
    Iso2PairSk => "iso/2/pair/sk";
    Iso2PairMiss => "iso/2/pair/miss";
    Iso2PairRelabel => "iso/2/pair/relabel";
    Iso2HatSk => "iso/2/pair/second-clique/sk";
    Iso2HatMiss => "iso/2/pair/second-clique/miss";
    Iso2HatAllSee => "iso/2/pair/second-clique/all-see";
    Iso2LargeSk => "iso/2/large/sk";
    Iso2LargeMiss => "iso/2/large/miss";
    Iso2LargeAllSee => "iso/2/large/all-see";
    Iso2LargeAllSeePartner => "iso/2/large/all-see/partner", optional;
    Iso3Single => "iso/3/single";
    Iso3Sk => "iso/3/sk";
    Iso3SeesY => "iso/3/sees-partner";
    Iso3MissY => "iso/3/miss-partner";
    Iso4 => "iso/4/plain";
    Iso4Sk => "iso/4/sk";
    SkAllColored => "sk/all-colored";
    SkOneWitnessed => "sk/one/witnessed";
    SkOneEqualNearFree => "sk/one/equal/near-free";
    SkOneEqualFarFree => "sk/one/equal/far-free";
    SkOneMore => "sk/one/more";
    SkManyWitnessed => "sk/many/witnessed";
    SkManyEqual => "sk/many/equal";
    SkManyMore => "sk/many/more";
    CProcessFresh => "comp/process/fresh";
    CProcessReuse => "comp/process/reuse";
    C1Singleton => "comp/1/singleton";
    C1LoneFree => "comp/1/lone/free-only";
    C1LoneOther => "comp/1/lone/other";
    C1AllSee => "comp/1/all-see";
    C2Singleton => "comp/2/singleton";
    C2PairBare => "comp/2/pair/bare";
    C2PairOther => "comp/2/pair/other";
    C2PairShared => "comp/2/pair/shared";
    C2PairMove => "comp/2/pair/move";
    C2PairRecolor => "comp/2/pair/recolor";
    C2LargeMiss => "comp/2/large/miss";
    C2LargeOther => "comp/2/large/other";
    C2LargeFreeOnly => "comp/2/large/free-only";
    C2LargeFreeOnlyAll => "comp/2/large/free-only/all-see-free", optional;
    C3AllColored => "comp/3/all-colored";
    C3SeesSecond => "comp/3/sees-second", optional;
    C3MissSecond => "comp/3/miss-second";
    C4OnPair => "comp/4/on-pair";
    C4OnThird => "comp/4/on-third";
    C4Uncolored => "comp/4/uncolored";
    C4Neither => "comp/4/neither";
}

/// Per-run diagnostics: branch hits and witness bookkeeping counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub hits: BTreeMap<Case, u64>,
    /// Recorded witnesses that no longer held at output and were re-derived.
    pub stale_witnesses: usize,
    /// Same, restricted to modulator vertices.
    pub stale_x_witnesses: usize,
    /// Color picks where no candidate passed every safety filter.
    pub fallback_picks: usize,
    /// Modulator vertices admitted to the exception set.
    pub exceptions: usize,
    /// Rule checks run at initial/completion boundaries.
    pub boundary_checks: usize,
}

impl Trace {
    pub fn hit(&mut self, case: Case) {
        *self.hits.entry(case).or_default() += 1;
    }

    pub fn merge(&mut self, other: &Trace) {
        for (&c, &n) in &other.hits {
            *self.hits.entry(c).or_default() += n;
        }
        self.stale_witnesses += other.stale_witnesses;
        self.stale_x_witnesses += other.stale_x_witnesses;
        self.fallback_picks += other.fallback_picks;
        self.exceptions += other.exceptions;
        self.boundary_checks += other.boundary_checks;
    }

    /// Required cases with no hits.
    pub fn missing(&self) -> Vec<Case> {
        Case::ALL.iter().copied().filter(|c| c.required() && !self.hits.contains_key(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_unique() {
        let mut labels: Vec<_> = Case::ALL.iter().map(|c| c.label()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), Case::ALL.len());
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = Trace::default();
        a.hit(Case::Pm11);
        let mut b = Trace::default();
        b.hit(Case::Pm11);
        b.hit(Case::Iso4);
        a.merge(&b);
        assert_eq!(a.hits[&Case::Pm11], 2);
        assert!(!a.missing().contains(&Case::Iso4));
        assert!(a.missing().contains(&Case::Iso1Sk));
    }
}
