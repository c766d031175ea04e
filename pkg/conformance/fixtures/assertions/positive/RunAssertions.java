class RunAssertions {
    public static void main(String[] args) {
        PredicateAssert chain = new Assertions().assertThat("AtoZ")
            .startsWith("A")
            .endsWith("Z");
        System.out.println("OK " + chain);
    }
}
