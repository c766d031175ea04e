class Action {
    static void startsWith(Object_PredicateAssert node) {
    }

    static void endsWith(Object_PredicateAssert node) {
    }
}
