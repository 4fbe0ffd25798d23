//! DSL sources for conformal charts under a polynomial change of coordinate.
//!
//! A template is a conformal chart written in coordinates `(U, V)`. Composing
//! it with the holomorphic map `w = z + a z² + b z³` keeps it conformal, so
//! the result is a valid chart wherever `w'(z) ≠ 0`. Small `a`, `b` on the
//! unit square keep `w'` away from zero.

use std::fmt::Write as _;

use super::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Template {
    Catenoid,
    Cylinder,
    Cone,
    Enneper,
    /// The homogeneous torus with `t = 2`.
    Torus,
}

impl Template {
    pub const ALL: [Template; 5] = [
        Template::Catenoid,
        Template::Cylinder,
        Template::Cone,
        Template::Enneper,
        Template::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Template::Catenoid => "catenoid",
            Template::Cylinder => "cylinder",
            Template::Cone => "cone",
            Template::Enneper => "enneper",
            Template::Torus => "torus",
        }
    }

    fn body(self) -> &'static str {
        match self {
            Template::Catenoid => "r3 [cosh(U)*cos(V), cosh(U)*sin(V), U]",
            Template::Cylinder => "r3 [cos(V), sin(V), U]",
            Template::Cone => "r3 [exp(U/sqrt(2))*cos(V), exp(U/sqrt(2))*sin(V), exp(U/sqrt(2))]",
            Template::Enneper => "r3 [U - U^3/3 + U*V^2, V^3/3 - V - U^2*V, U^2 - V^2]",
            Template::Torus => {
                "raw6 [cos(2*U/sqrt(3))*cos(V), cos(2*U/sqrt(3))*sin(V), \
                 sin(2*U/sqrt(3))*cos(V), sin(2*U/sqrt(3))*sin(V), cos(U/sqrt(3)), sin(U/sqrt(3))]"
            }
        }
    }

    /// Whether the template surface is Willmore.
    pub fn is_willmore(self) -> bool {
        matches!(self, Template::Catenoid | Template::Enneper | Template::Torus)
    }
}

fn num(x: f64) -> String {
    // parenthesized so that negative values compose with any operator
    format!("({x})")
}

/// `Re` and `Im` of `z + a z² + b z³` as DSL expressions in `u`, `v`.
pub fn reparam_components(a: (f64, f64), b: (f64, f64)) -> (String, String) {
    let sq_re = "(u^2 - v^2)";
    let sq_im = "(2*u*v)";
    let cu_re = "(u^3 - 3*u*v^2)";
    let cu_im = "(3*u^2*v - v^3)";
    let mut re = String::from("u");
    let mut im = String::from("v");
    let _ = write!(re, " + {}*{sq_re} - {}*{sq_im}", num(a.0), num(a.1));
    let _ = write!(re, " + {}*{cu_re} - {}*{cu_im}", num(b.0), num(b.1));
    let _ = write!(im, " + {}*{sq_im} + {}*{sq_re}", num(a.0), num(a.1));
    let _ = write!(im, " + {}*{cu_im} + {}*{cu_re}", num(b.0), num(b.1));
    (re, im)
}

/// DSL source of `template ∘ (z + a z² + b z³)`.
pub fn reparametrized_source(template: Template, a: (f64, f64), b: (f64, f64)) -> String {
    let (re, im) = reparam_components(a, b);
    let body = template
        .body()
        .replace('U', &format!("({re})"))
        .replace('V', &format!("({im})"));
    format!("# {} under z + a z^2 + b z^3\n{body}\n", template.name())
}

/// Domain used for reparametrized templates.
pub fn reparam_domain() -> Domain {
    Domain::new(-0.5, 0.5, -0.5, 0.5)
}
