namespace fpt {
// implementation in progress
}
