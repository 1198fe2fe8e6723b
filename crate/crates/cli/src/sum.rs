use std::io::Write;

use charsum_core::engines::{
    inverse_shift_sum, kloosterman_over_h, nonlinear_sum_xxa, shifted_product_sum, shifted_sum,
};
use charsum_core::verify::ModePolicy;
use charsum_core::{Character, CycInt, FieldCtx, Mode, Subgroup, SumValue};
use clap::{Args, ValueEnum};

use crate::{ModeArg, UsageError, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Σ_{x∈H} χ(x+a), or over an explicit set.
    Shifted,
    /// Σ_{x∈H} χ(x(x+a)).
    Nonlinear,
    /// Σ_{x∈H} χ((x+a)(x+b)).
    Product,
    /// Σ_{x∈H} e_p(kx + l/x).
    Kloosterman,
    /// Σ_{x∈H} e_p(k/(x+a)).
    InverseShift,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(long)]
    pub p: u64,
    /// `quadratic` or a dual-group index.
    #[arg(long, default_value = "quadratic")]
    pub chi: String,
    #[arg(long, value_enum, default_value_t = Kind::Shifted)]
    pub kind: Kind,
    /// Order of the subgroup H.
    #[arg(long, conflicts_with_all = ["near_sqrt", "set"])]
    pub subgroup_order: Option<u32>,
    /// Use the subgroup whose order is closest to √p (the default).
    #[arg(long)]
    pub near_sqrt: bool,
    /// Explicit comma-separated set D (shifted sums only).
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<u32>>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
}

fn need(v: Option<u32>, name: &str, kind: Kind) -> Result<u32, UsageError> {
    v.ok_or_else(|| UsageError(format!("--{name} is required for {kind:?} sums")))
}

fn parse_chi<'a>(ctx: &'a FieldCtx, s: &str) -> Result<Character<'a>, UsageError> {
    let chi = if s == "quadratic" {
        Character::quadratic(ctx)
    } else {
        let j = s
            .parse()
            .map_err(|_| UsageError(format!("--chi must be `quadratic` or an index, got {s:?}")))?;
        Character::new(ctx, j)?
    };
    if chi.is_principal() {
        return Err(UsageError(
            "the principal character is not allowed here".into(),
        ));
    }
    Ok(chi)
}

/// `2 - 3z + z^4` for coefficients `[2, -3, 0, 0, 1]`.
pub(crate) fn poly_string(c: &[i128]) -> String {
    let mut s = String::new();
    for (k, &v) in c.iter().enumerate().filter(|(_, v)| **v != 0) {
        let mag = v.unsigned_abs();
        if s.is_empty() {
            if v < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if v < 0 { " - " } else { " + " });
        }
        match (k, mag) {
            (0, _) => s.push_str(&mag.to_string()),
            (_, 1) => {}
            _ => s.push_str(&mag.to_string()),
        }
        match k {
            0 => {}
            1 => s.push('z'),
            _ => s.push_str(&format!("z^{k}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn print_exact(out: &mut dyn Write, z: &CycInt) -> std::io::Result<()> {
    let reduced = z.reduced();
    writeln!(
        out,
        "ring         Z[z]/Phi_{}(z), z = exp(2 pi i/{})",
        z.m(),
        z.m()
    )?;
    writeln!(out, "coefficients {:?}", z.coeffs())?;
    match z.as_integer() {
        Some(n) => writeln!(out, "value        {n}"),
        None => writeln!(out, "value        {}", poly_string(&reduced)),
    }
}

pub(crate) fn run(args: &SumArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let ctx = FieldCtx::new(args.p)?;
    let additive = matches!(args.kind, Kind::Kloosterman | Kind::InverseShift);
    let mode = match args.mode {
        ModeArg::Exact if additive => {
            return Err(UsageError(format!("{:?} sums are numeric only", args.kind)));
        }
        _ if additive => Mode::Numeric,
        ModeArg::Exact => ModePolicy::Exact.resolve(ctx.group_order()),
        ModeArg::Numeric => Mode::Numeric,
        ModeArg::Auto => ModePolicy::Auto.resolve(ctx.group_order()),
    };
    if args.set.is_some() && args.kind != Kind::Shifted {
        return Err(UsageError("--set applies to shifted sums only".into()));
    }
    let h: Subgroup = match args.subgroup_order {
        Some(n) => ctx.subgroup(n)?,
        None => ctx.subgroup_near_sqrt(),
    };
    let kind = args.kind;
    let value: SumValue = match kind {
        Kind::Shifted => {
            let chi = parse_chi(&ctx, &args.chi)?;
            let set = args.set.as_deref().unwrap_or(h.elements());
            shifted_sum(&ctx, &chi, set, need(args.a, "a", kind)?, mode)?
        }
        Kind::Nonlinear => {
            let chi = parse_chi(&ctx, &args.chi)?;
            nonlinear_sum_xxa(&ctx, &chi, &h, need(args.a, "a", kind)?, mode)?
        }
        Kind::Product => {
            let chi = parse_chi(&ctx, &args.chi)?;
            shifted_product_sum(
                &ctx,
                &chi,
                &h,
                need(args.a, "a", kind)?,
                need(args.b, "b", kind)?,
                mode,
            )?
        }
        Kind::Kloosterman => {
            kloosterman_over_h(&ctx, &h, need(args.k, "k", kind)?, need(args.l, "l", kind)?)?
        }
        Kind::InverseShift => {
            inverse_shift_sum(&ctx, &h, need(args.k, "k", kind)?, need(args.a, "a", kind)?)?
        }
    };

    writeln!(
        out,
        "kind         {}",
        kind.to_possible_value().expect("not skipped").get_name()
    )?;
    writeln!(out, "p            {}", ctx.p())?;
    match &args.set {
        Some(set) => writeln!(out, "set          {set:?}")?,
        None => writeln!(out, "h_order      {}", h.order())?,
    }
    writeln!(out, "mode         {}", value.mode())?;
    if let Some(z) = value.as_exact() {
        print_exact(out, z)?;
    }
    let c = value.to_complex();
    writeln!(out, "re           {}", c.re)?;
    writeln!(out, "im           {}", c.im)?;
    writeln!(out, "abs          {}", value.abs())?;
    writeln!(
        out,
        "ratio        {}",
        value.abs() / (ctx.p() as f64).sqrt()
    )?;
    Ok(EXIT_OK)
}
