use std::collections::BTreeMap;

use super::PolynomialMap;

/// Homogeneous parts of a polynomial map, keyed by degree. Only parts that
/// are nonzero as maps are kept, so the degree is semantic: `c·x − c·x`
/// has no parts at all.
#[derive(Debug, Clone)]
pub struct HomogeneousDecomposition {
    pub components: BTreeMap<usize, PolynomialMap>,
    /// `None` for the zero map.
    pub degree: Option<usize>,
    /// Highest nonzero part; the empty map for the zero map.
    pub leading_form: PolynomialMap,
}

impl HomogeneousDecomposition {
    pub fn is_zero_map(&self) -> bool {
        self.degree.is_none()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }
}

impl PolynomialMap {
    /// Groups terms by word degree and keeps the groups that expand to a
    /// nonzero polynomial map.
    pub fn decompose(&self) -> HomogeneousDecomposition {
        let mut components = BTreeMap::new();
        let max = self.syntactic_degree();
        for d in 0..=max {
            let part = self.syntactic_part(d);
            if part.terms().is_empty() {
                continue;
            }
            if part.expand_full().iter().any(|p| !p.is_zero()) {
                components.insert(d, part);
            }
        }
        let degree = components.keys().next_back().copied();
        let leading_form = match degree {
            Some(d) => components[&d].clone(),
            None => PolynomialMap::zero(self.algebra.clone(), self.nvars).expect("nvars ≥ 1"),
        };
        HomogeneousDecomposition { components, degree, leading_form }
    }

    /// Semantic degree; `None` for the zero map.
    pub fn degree(&self) -> Option<usize> {
        self.decompose().degree
    }

    pub fn leading_form(&self) -> PolynomialMap {
        self.decompose().leading_form
    }
}
