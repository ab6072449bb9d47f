//! The versioned tolerance defaults: one table, overridable by CLI flags,
//! used verbatim by the verification suites and the acceptance run.

/// Schema version of reports and of this table.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug)]
pub struct Tolerances {
    /// matrix-model residual for the Kostant squares
    pub kostant_matrix: f64,
    /// compression identities (comp1, co14, ele*, gign4, nea1, qsic12/13/19)
    pub compression: f64,
    /// S_θ matrix-vs-closed-form at random Y (relative)
    pub qsic7: f64,
    /// δ_θ, psica1, mir9a, rob3 closed forms
    pub s_delta: f64,
    /// Thfub endomorphism route vs japo4
    pub thfub: f64,
    /// Lichnerowicz two-route agreement
    pub lichnerowicz: f64,
    /// Mehler normalization quadrature
    pub mehler_mass: f64,
    /// Chapman–Kolmogorov 2-d quadrature
    pub chapman: f64,
    /// scaling reparameterizations (stan6x2a, scal5)
    pub kernel_scaling: f64,
    /// b → 0 pointwise limit at b = 0.03
    pub kernel_limit: f64,
    /// MC z-score gate
    pub z_max: f64,
    /// generalized Itô fitted order lower bound
    pub ito_order_min: f64,
    /// escape-fit slope z-score lower bound
    pub escape_z_min: f64,
    /// transport factorization per path
    pub transport_factorization: f64,
    /// θ = π/2 transport closed form
    pub transport_right_angle: f64,
    /// eta: conk2 convolution
    pub conk2: f64,
    /// eta: nauf18 vs erfc oracle
    pub nauf18: f64,
    /// eta: large-t limit (relative)
    pub bob9x1: f64,
    /// eta: bob16 (relative)
    pub bob16: f64,
    /// orbital: Tvan vanishing
    pub tvan: f64,
    /// orbital: key4 quadrature (relative)
    pub key4: f64,
    /// orbital: free9 internal two-expression equality (relative)
    pub free9_internal: f64,
    /// orbital: Tnew vs Tgen dual route (relative)
    pub dual_route: f64,
    /// conjugation identities (co12, co13a4, he-1)
    pub conjugation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            kostant_matrix: 1e-10,
            compression: 1e-10,
            qsic7: 1e-9,
            s_delta: 1e-10,
            thfub: 1e-9,
            lichnerowicz: 1e-10,
            mehler_mass: 1e-8,
            chapman: 1e-6,
            kernel_scaling: 1e-12,
            kernel_limit: 1e-2,
            z_max: 3.0,
            ito_order_min: 0.4,
            escape_z_min: 3.0,
            transport_factorization: 1e-8,
            transport_right_angle: 1e-8,
            conk2: 1e-8,
            nauf18: 1e-7,
            bob9x1: 1e-3,
            bob16: 1e-4,
            tvan: 1e-12,
            key4: 1e-8,
            free9_internal: 1e-6,
            dual_route: 1e-3,
            conjugation: 1e-12,
        }
    }
}

impl Tolerances {
    /// Apply a `KEY=VALUE` override; unknown keys are rejected.
    pub fn apply_override(&mut self, key: &str, value: f64) -> Result<(), String> {
        match key {
            "kostant_matrix" => self.kostant_matrix = value,
            "compression" => self.compression = value,
            "qsic7" => self.qsic7 = value,
            "s_delta" => self.s_delta = value,
            "thfub" => self.thfub = value,
            "lichnerowicz" => self.lichnerowicz = value,
            "mehler_mass" => self.mehler_mass = value,
            "chapman" => self.chapman = value,
            "kernel_scaling" => self.kernel_scaling = value,
            "kernel_limit" => self.kernel_limit = value,
            "z_max" => self.z_max = value,
            "ito_order_min" => self.ito_order_min = value,
            "escape_z_min" => self.escape_z_min = value,
            "transport_factorization" => self.transport_factorization = value,
            "transport_right_angle" => self.transport_right_angle = value,
            "conk2" => self.conk2 = value,
            "nauf18" => self.nauf18 = value,
            "bob9x1" => self.bob9x1 = value,
            "bob16" => self.bob16 = value,
            "tvan" => self.tvan = value,
            "key4" => self.key4 = value,
            "free9_internal" => self.free9_internal = value,
            "dual_route" => self.dual_route = value,
            "conjugation" => self.conjugation = value,
            _ => return Err(format!("unknown tolerance key: {key}")),
        }
        Ok(())
    }
}
