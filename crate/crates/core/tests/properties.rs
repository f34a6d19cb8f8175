mod props;

fn check(result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{e}");
    }
}

#[test]
fn order_axioms() {
    check(props::order_axioms(10_000));
}

#[test]
fn action_is_a_monoid_action() {
    check(props::action_is_a_monoid_action(10_000));
}

#[test]
fn inc_monoid_laws() {
    check(props::inc_monoid_laws(10_000));
}

#[test]
fn pi_divides_on_toric_samples() {
    check(props::pi_divides_on_toric_samples(10_000));
}

#[test]
fn pi_divides_exhaustive_small_width() {
    check(props::pi_divides_exhaustive_small_width());
}

#[test]
fn normal_form_is_idempotent_and_replayable() {
    check(props::normal_form_is_idempotent_and_replayable(1_000));
}
