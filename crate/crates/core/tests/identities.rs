//! Every registry entry passes on its default cases.

use mhq_core::identities::{default_instances, lookup, run_all, Status};

fn run(ids: &[&str]) {
    let entries: Vec<_> = ids.iter().map(|id| lookup(id).unwrap()).collect();
    let items = default_instances(&entries, 17);
    let reports = run_all(&items);
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| serde_json::to_string(r).unwrap())
        .collect();
    assert!(bad.is_empty(), "{} of {} not passing:\n{}", bad.len(), reports.len(), bad.join("\n"));
}

#[test]
fn q_binomial() {
    run(&["Q_BINOMIAL"]);
}

#[test]
fn gauss() {
    run(&["GAUSS"]);
}

#[test]
fn heine() {
    run(&["HEINE", "HEINE_GAUSS_PATH", "HEINE_EULER_PATH"]);
}

#[test]
fn euler() {
    run(&["EULER"]);
}

#[test]
fn kaneko_system() {
    run(&["KANEKO_SYSTEM"]);
}

#[test]
fn saal_coeff() {
    run(&["SAAL_COEFF"]);
}

#[test]
fn saalschutz() {
    run(&["SAALSCHUTZ"]);
}

#[test]
fn chu_vandermonde() {
    run(&["CHU_VANDERMONDE"]);
}

#[test]
fn macdonald_rect() {
    run(&["MACDONALD_RECT"]);
}

#[test]
fn sears() {
    run(&["SEARS", "BUSCAR"]);
}

#[test]
fn structural() {
    run(&["OTOTO", "SHUMI", "LAPIZ", "SOMBRERO", "SYMM", "NORM_GROUND", "SHIFT", "JB", "NEG_REVERSE_P"]);
}

#[test]
fn jb_without_the_t_power_fails() {
    use mhq_core::identities::{verify, Mode, ParamSpec, Value};
    let entry = lookup("JB").unwrap();
    let ps = ParamSpec::new(Mode::FormalQ, 2).with("a", Value::QPow { c: mhq_core::rat(2, 3), e: 1 });
    assert_eq!(verify(entry, &ps.clone().with("variant", Value::Int(0))).status, Status::Pass);
    let r = verify(entry, &ps.with("variant", Value::Int(1)));
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.witness.unwrap().claim, "factorial");
}

#[test]
fn transformations() {
    run(&["CHICHI", "SHIFTED_GAUSS", "PFAFF_KUMMER"]);
}

fn shifted_gauss_spec(n: usize, lam: &[u32]) -> mhq_core::identities::ParamSpec {
    use mhq_core::identities::{Mode, ParamSpec, Value};
    let mut ps = ParamSpec::new(Mode::FormalQ, n)
        .with("a", Value::QPow { c: mhq_core::rat(2, 3), e: 1 })
        .with("z", Value::QPow { c: mhq_core::rat(7, 5), e: 3 });
    ps.lambda = Some(mhq_core::Partition::new(lam.to_vec()).unwrap());
    ps
}

#[test]
fn shifted_gauss_with_ax_in_the_numerator_fails() {
    use mhq_core::identities::{verify, Sampler, Value};
    let entry = lookup("SHIFTED_GAUSS").unwrap();
    let mut ps = shifted_gauss_spec(2, &[1])
        .with("c", Value::QPow { c: mhq_core::rat(-5, 4), e: 1 })
        .with("x", Value::QPow { c: mhq_core::rat(3, 7), e: 1 })
        .with("variant", Value::Int(1));
    (entry.fill)(&mut ps, &mut Sampler::new(1));
    assert_eq!(verify(entry, &ps).status, Status::Fail);
}

#[test]
fn shifted_gauss_at_b_c_zero_and_x_one_is_chichi() {
    use mhq_core::identities::{verify, Value};
    for lam in [&[1u32][..], &[2], &[1, 1]] {
        let sg = shifted_gauss_spec(2, lam).with("b", Value::Int(0)).with("c", Value::Int(0)).with("x", Value::Int(1)).with("variant", Value::Int(0));
        assert_eq!(verify(lookup("SHIFTED_GAUSS").unwrap(), &sg).status, Status::Pass, "{lam:?}");
        assert_eq!(verify(lookup("CHICHI").unwrap(), &shifted_gauss_spec(2, lam)).status, Status::Pass, "{lam:?}");
    }
}

#[test]
fn one_psi_one() {
    run(&["ONE_PSI_ONE"]);
}

#[test]
fn constant_terms() {
    run(&["KADELL_KANEKO_CT", "LLAVE"]);
}

#[test]
fn two_psi_two() {
    run(&["TWO_PSI_TWO_A", "TWO_PSI_TWO_SUM", "TWO_PSI_TWO_B", "PSI_INVERSION", "BAILEY"]);
}

fn alpha_spec(n: usize, k: u32, variant: i64) -> mhq_core::identities::ParamSpec {
    use mhq_core::identities::{Mode, ParamSpec, Value};
    let r = mhq_core::rat;
    let mut ps = ParamSpec::new(Mode::FormalQ, n)
        .with_k(k)
        .with("a1", Value::QPow { c: r(2, 3), e: 0 })
        .with("a2", Value::QPow { c: r(-3, 5), e: 0 })
        .with("a3", Value::QPow { c: r(5, 7), e: 1 })
        .with("a4", Value::QPow { c: r(-7, 4), e: 1 })
        .with("variant", Value::Int(variant));
    ps.dq = 8;
    ps
}

#[test]
fn second_transformation_needs_q_over_a3() {
    use mhq_core::identities::verify;
    use mhq_core::identities::Value;
    let entry = lookup("TWO_PSI_TWO_B").unwrap();
    // a4 ~ q^4 keeps the printed right side convergent too
    let spec = |n, v| alpha_spec(n, 1, v).with("a4", Value::QPow { c: mhq_core::rat(-7, 4), e: 4 });
    for n in [1, 2] {
        assert_eq!(verify(entry, &spec(n, 0)).status, Status::Pass);
        let r = verify(entry, &spec(n, 1));
        assert!(r.status == Status::Fail && r.witness.is_some(), "{r:?}");
    }
}

#[test]
fn inversion_argument_is_cd_over_ab() {
    use mhq_core::identities::{verify, Value};
    let entry = lookup("PSI_INVERSION").unwrap();
    let spec = |v| alpha_spec(2, 1, v).with("a4", Value::QPow { c: mhq_core::rat(-7, 4), e: 4 }).with("w", Value::QPow { c: mhq_core::rat(9, 2), e: 1 });
    assert_eq!(verify(entry, &spec(0)).status, Status::Pass);
    let r = verify(entry, &spec(1));
    assert!(r.status == Status::Fail && r.witness.is_some(), "{r:?}");
}

#[test]
fn bailey_right_argument_has_no_extra_t_power() {
    use mhq_core::identities::{verify, Value};
    let entry = lookup("BAILEY").unwrap();
    // a3 ~ q^3 keeps the printed right side convergent too
    let spec = |n, v| {
        alpha_spec(n, 1, v)
            .with("a3", Value::QPow { c: mhq_core::rat(5, 7), e: 3 })
            .with("z", Value::QPow { c: mhq_core::rat(4, 9), e: 1 })
            .with("reduce", Value::Int(0))
    };
    // the two readings coincide for one variable
    assert_eq!(verify(entry, &spec(1, 1)).status, Status::Pass);
    assert_eq!(verify(entry, &spec(2, 0)).status, Status::Pass);
    let r = verify(entry, &spec(2, 1));
    assert!(r.status == Status::Fail && r.witness.is_some(), "{r:?}");
}

#[test]
fn registry_lists_the_required_ids_first() {
    let ids: Vec<&str> = mhq_core::identities::list_identities().iter().map(|e| e.id).collect();
    let required = [
        "Q_BINOMIAL", "HEINE", "GAUSS", "EULER", "KANEKO_SYSTEM", "SAAL_COEFF", "SAALSCHUTZ", "CHU_VANDERMONDE",
        "MACDONALD_RECT", "OTOTO", "SHUMI", "LAPIZ", "SOMBRERO", "SYMM", "NORM_GROUND", "CHICHI", "SHIFTED_GAUSS",
        "PFAFF_KUMMER", "SEARS", "ONE_PSI_ONE", "KADELL_KANEKO_CT", "LLAVE", "TWO_PSI_TWO_A", "TWO_PSI_TWO_SUM",
        "TWO_PSI_TWO_B", "PSI_INVERSION", "JB", "NEG_REVERSE_P", "BAILEY",
    ];
    assert_eq!(&ids[..required.len()], &required[..]);
    let mut unique = ids.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), ids.len());
    assert_eq!(&ids[required.len()..], &["HEINE_GAUSS_PATH", "HEINE_EULER_PATH", "BUSCAR", "SHIFT"]);
}
