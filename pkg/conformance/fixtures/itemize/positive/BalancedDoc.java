class BalancedDoc {
    public static void main(String[] args) {
        String tex = API.begin("Item A")
            .begin("Item A.1")
            .end("x")
            .end("y")
            .asTeXStr();
        System.out.println("OK " + tex);
    }
}
