class UnbalancedEnd {
    public static void main(String[] args) {
        String tex = API.begin("Item A")
            .begin("Item A.1")
            .end("x")
            .asTeXStr(); // expect-error
        System.out.println(tex);
    }
}
