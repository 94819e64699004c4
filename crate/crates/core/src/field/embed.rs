use super::{FieldElement, FieldSpec, Raw};
use crate::error::{Error, Result};
use crate::poly::{factor, Polynomial};

/// Ring embedding GF(p^a) → GF(p^{a·d}) determined by the image of `u`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    image_of_generator: FieldElement,
    /// Images of `u^i`, `0 <= i < a`.
    powers: Vec<Raw>,
}

/// Finds an embedding of `source` into `target` by extracting a root of the
/// source modulus in the target field. The smallest root in enumeration order
/// is used, so the result is canonical.
pub fn embed_field(source: &FieldSpec, target: &FieldSpec) -> Result<Embedding> {
    if source.p() != target.p() || !target.m().is_multiple_of(source.m()) {
        return Err(Error::IncompatibleFields {
            src_p: source.p(),
            src_m: source.m(),
            dst_p: target.p(),
            dst_m: target.m(),
        });
    }
    let image = if source.m() == 1 {
        target.one()
    } else {
        let lifted = super::lift_prime_coeffs(target, source.modulus());
        let roots = factor::roots_raw(target, &lifted);
        let root = roots
            .first()
            .copied()
            .ok_or_else(|| Error::EmbeddingFailure("source modulus has no root in target".into()))?;
        target.wrap(root)
    };
    let ar = target.ar();
    let mut powers = Vec::with_capacity(source.m());
    let mut cur: Raw = 1;
    for _ in 0..source.m() {
        powers.push(cur);
        cur = ar.mul(cur, image.raw());
    }
    Ok(Embedding {
        source: source.clone(),
        target: target.clone(),
        image_of_generator: image,
        powers,
    })
}

impl Embedding {
    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image_of_generator
    }

    pub(crate) fn apply_raw(&self, raw: Raw) -> Raw {
        let ar = self.target.ar();
        let digits = self.source.ar().to_digits(raw);
        digits
            .iter()
            .zip(&self.powers)
            .fold(0, |acc, (&c, &pw)| ar.add(acc, ar.mul(ar.from_int(c as u64), pw)))
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.spec() != &self.source {
            return Err(Error::SpecMismatch);
        }
        Ok(self.target.wrap(self.apply_raw(x.raw())))
    }

    /// Maps every coefficient of `f` into the target field.
    pub fn apply_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.spec() != &self.source {
            return Err(Error::SpecMismatch);
        }
        let coeffs = f.raw_coeffs().iter().map(|&c| self.apply_raw(c)).collect();
        Ok(Polynomial::from_raw(&self.target, coeffs))
    }
}
