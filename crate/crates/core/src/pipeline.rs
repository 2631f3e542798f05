//! Shared construction of everything downstream consumers need for one
//! pair: derived invariants, expansion, sequences, semigroup, fans, orbit
//! poset, global-generation report, and the full list of ideal family
//! members.

use crate::error::Error;
use crate::exact::{hj_expand, HjExpansion};
use crate::fan::{
    base_rays, check_global_generation, embedding_fans, orbit_poset, resolution_fan, BaseRays,
    ColoredFan, EmbeddingFans, GlobalGeneration, OrbitPoset,
};
use crate::ideal::{build_ideal, Family, IdealSpec};
use crate::pair::{
    derive_invariants, eln_sequences, is_toric, semigroup_generators, DerivedInvariants,
    PopovPair, SemigroupGenerators, SequenceTable,
};

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub pair: PopovPair,
    pub inv: DerivedInvariants,
    pub toric: bool,
    pub hj: HjExpansion,
    pub seq: SequenceTable,
    pub sg: SemigroupGenerators,
    pub base: BaseRays,
    pub fans: EmbeddingFans,
    pub resolution: ColoredFan,
    pub poset: OrbitPoset,
    pub global_generation: GlobalGeneration,
    /// `I0`, `I1`, then `J0^1..J0^{r+1}`, then `J1^1..J1^{r+1}`.
    pub ideals: Vec<IdealSpec>,
}

impl Pipeline {
    pub fn new(pair: &PopovPair) -> Result<Self, Error> {
        if pair.smooth {
            return Err(Error::SmoothCaseUnsupported);
        }
        let inv = derive_invariants(pair)?;
        let toric = is_toric(pair)?;
        let hj = hj_expand(&inv.b, &inv.t)?;
        let seq = eln_sequences(&inv, &hj, pair)?;
        let sg = semigroup_generators(pair)?;
        let base = base_rays(pair, &inv);
        let fans = embedding_fans(pair, &inv);
        let resolution = resolution_fan(pair, &inv, &hj, &seq)?;
        let poset = orbit_poset(&resolution);
        let global_generation = check_global_generation(pair, &hj, &seq)?;
        let mut ideals = vec![
            build_ideal(Family::I0, 0, pair, &inv, &seq, &sg)?,
            build_ideal(Family::I1, 0, pair, &inv, &seq, &sg)?,
        ];
        for family in [Family::J0, Family::J1] {
            for i in 1..=hj.depth() + 1 {
                ideals.push(build_ideal(family, i, pair, &inv, &seq, &sg)?);
            }
        }
        Ok(Pipeline {
            pair: pair.clone(),
            inv,
            toric,
            hj,
            seq,
            sg,
            base,
            fans,
            resolution,
            poset,
            global_generation,
            ideals,
        })
    }

    pub fn depth(&self) -> usize {
        self.hj.depth()
    }

    pub fn ideal(&self, family: Family, index: usize) -> Option<&IdealSpec> {
        self.ideals.iter().find(|s| {
            s.family == family && (s.index.is_none() || s.index == Some(index))
        })
    }
}
