use super::fresnel::{interface, Medium, Polarization, Reflection};
use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::materials::{GSource, MaterialModel, MaterialResponse};

/// A mirror: a homogeneous half-space or a film on a substrate
/// (a `Vacuum` substrate is a free-standing film).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mirror {
    HalfSpace(MaterialModel),
    Film {
        film: MaterialModel,
        /// film thickness in nm
        thickness: f64,
        substrate: MaterialModel,
    },
}

impl Mirror {
    pub fn validate(&self) -> Result<()> {
        match self {
            Mirror::HalfSpace(m) => m.validate(),
            Mirror::Film {
                film,
                thickness,
                substrate,
            } => {
                if !(*thickness > 0.0) || !thickness.is_finite() {
                    return Err(Error::domain(format!("film thickness must be positive, got {thickness}")));
                }
                if matches!(film, MaterialModel::PerfectConductor) {
                    return Err(Error::domain("a perfect conductor is only allowed as a half-space"));
                }
                film.validate()?;
                substrate.validate()
            }
        }
    }

    /// Highest critical temperature among the mirror's materials.
    pub fn critical_temperature(&self) -> Option<f64> {
        self.materials()
            .iter()
            .filter_map(|m| m.critical_temperature())
            .reduce(f64::max)
    }

    pub fn materials(&self) -> Vec<MaterialModel> {
        match self {
            Mirror::HalfSpace(m) => vec![*m],
            Mirror::Film { film, substrate, .. } => vec![*film, *substrate],
        }
    }

    /// Applies `f` to every material of the mirror.
    pub fn map_materials(&self, f: impl Fn(&MaterialModel) -> MaterialModel) -> Mirror {
        match self {
            Mirror::HalfSpace(m) => Mirror::HalfSpace(f(m)),
            Mirror::Film {
                film,
                thickness,
                substrate,
            } => Mirror::Film {
                film: f(film),
                thickness: *thickness,
                substrate: f(substrate),
            },
        }
    }

    pub fn normal_state(&self) -> Mirror {
        self.map_materials(MaterialModel::normal_state)
    }
}

/// Temperature-resolved materials, shared g tables keyed by model.
#[derive(Debug, Default)]
pub(crate) struct ResponseCache {
    entries: Vec<(MaterialModel, MaterialResponse)>,
}

impl ResponseCache {
    pub fn get(&mut self, model: &MaterialModel, t: f64, source: &GSource) -> Result<MaterialResponse> {
        if let Some((_, r)) = self.entries.iter().find(|(m, _)| m == model) {
            return Ok(r.clone());
        }
        let r = MaterialResponse::resolve(model, t, source)?;
        self.entries.push((*model, r.clone()));
        Ok(r)
    }
}

/// A mirror with its materials evaluated at one temperature.
#[derive(Debug, Clone)]
pub enum ResolvedMirror {
    HalfSpace(MaterialResponse),
    Film {
        film: MaterialResponse,
        thickness: f64,
        substrate: MaterialResponse,
    },
}

impl ResolvedMirror {
    pub fn resolve(mirror: &Mirror, t: f64, source: &GSource) -> Result<Self> {
        Self::resolve_cached(mirror, t, source, &mut ResponseCache::default())
    }

    pub(crate) fn resolve_cached(
        mirror: &Mirror,
        t: f64,
        source: &GSource,
        cache: &mut ResponseCache,
    ) -> Result<Self> {
        mirror.validate()?;
        Ok(match mirror {
            Mirror::HalfSpace(m) => ResolvedMirror::HalfSpace(cache.get(m, t, source)?),
            Mirror::Film {
                film,
                thickness,
                substrate,
            } => ResolvedMirror::Film {
                film: cache.get(film, t, source)?,
                thickness: *thickness,
                substrate: cache.get(substrate, t, source)?,
            },
        })
    }

    /// Optical data of the mirror at ħξ = `xi_ev` (ξ = 0 uses static limits).
    pub(crate) fn at_frequency(&self, xi_ev: f64) -> Result<MirrorAt> {
        let kappa = CODATA.wavenumber(xi_ev);
        let kappa2 = kappa * kappa;
        let medium = |m: &MaterialResponse| -> Result<Medium> {
            if xi_ev == 0.0 {
                Ok(static_medium(m))
            } else {
                Ok(Medium::finite(m.permittivity(xi_ev)?, kappa2))
            }
        };
        let vacuum = Medium::vacuum(kappa2);
        Ok(match self {
            ResolvedMirror::HalfSpace(m) => MirrorAt {
                vacuum,
                layers: Layers::Single(medium(m)?),
            },
            ResolvedMirror::Film {
                film,
                thickness,
                substrate,
            } => MirrorAt {
                vacuum,
                layers: Layers::Film {
                    film: medium(film)?,
                    thickness: *thickness,
                    substrate: medium(substrate)?,
                },
            },
        })
    }

    /// Reflection coefficient at ħξ = `xi_ev` ≥ 0 and in-plane wavenumber
    /// `k_perp` (1/nm).
    pub fn reflection(&self, xi_ev: f64, k_perp: f64, pol: Polarization) -> Result<f64> {
        if !(xi_ev >= 0.0 && k_perp >= 0.0) || (xi_ev == 0.0 && k_perp == 0.0) {
            return Err(Error::domain("reflection needs ξ, k⊥ >= 0, not both zero"));
        }
        Ok(self.at_frequency(xi_ev)?.reflect(k_perp * k_perp, pol).r)
    }
}

fn static_medium(m: &MaterialResponse) -> Medium {
    let a = m.asymptote();
    let extra = match a.order {
        0 | 1 => 0.0,
        2 => a.coeff / (CODATA.hbar_c_ev_nm * CODATA.hbar_c_ev_nm),
        _ => f64::INFINITY,
    };
    Medium {
        order: a.order,
        coeff: a.coeff,
        extra,
    }
}

#[derive(Debug, Clone, Copy)]
enum Layers {
    Single(Medium),
    Film {
        film: Medium,
        thickness: f64,
        substrate: Medium,
    },
}

/// Mirror optics frozen at one Matsubara frequency.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MirrorAt {
    vacuum: Medium,
    layers: Layers,
}

impl MirrorAt {
    #[inline]
    pub fn reflect(&self, k2: f64, pol: Polarization) -> Reflection {
        match &self.layers {
            Layers::Single(m) => interface(&self.vacuum, m, k2, pol),
            Layers::Film {
                film,
                thickness,
                substrate,
            } => {
                let top = interface(&self.vacuum, film, k2, pol);
                let bottom = interface(film, substrate, k2, pol);
                let arg = -2.0 * thickness * film.s(k2);
                let below = bottom.attenuated(arg.exp(), -arg.exp_m1());
                Reflection::stack(&top, &below)
            }
        }
    }

    /// True when the mirror does not reflect at all in either polarization.
    pub fn is_transparent(&self) -> bool {
        let vac = |m: &Medium| m.order == 0 && m.coeff == 1.0;
        match &self.layers {
            Layers::Single(m) => vac(m),
            Layers::Film { film, substrate, .. } => vac(film) && vac(substrate),
        }
    }
}
