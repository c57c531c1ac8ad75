use flagvec::verify::{run, DEFAULT_SEED};

#[test]
fn report_runs() {
    let r = run(DEFAULT_SEED).unwrap();
    println!("{r}");
    assert!(r.all_pass());
}
